//! Drives the C ABI the way a foreign caller would: raw pointers, status
//! codes, and explicit frees.

use std::ffi::CStr;
use std::ptr;

use dtwsom_ffi::*;

fn last_error() -> String {
    let message = dtwsom_last_error_message();
    assert!(!message.is_null(), "a failing call should leave a message");
    unsafe { CStr::from_ptr(message) }
        .to_str()
        .unwrap()
        .to_string()
}

#[test]
fn version_is_a_readable_semver_string() {
    let version = dtwsom_version();
    assert!(!version.is_null());
    let text = unsafe { CStr::from_ptr(version) }.to_str().unwrap();
    assert_eq!(text.split('.').count(), 3);
}

#[test]
fn distance_and_alignment_match_the_rust_api() {
    let a = [0.0, 1.0, 2.0, 3.0, 2.0, 1.0];
    let b = [0.0, 0.5, 2.5, 3.0, 1.0];
    let expected = {
        let sa = dtwsom::Sequence::univariate(a.to_vec()).unwrap();
        let sb = dtwsom::Sequence::univariate(b.to_vec()).unwrap();
        dtwsom::dtw(&sa, &sb, None).unwrap()
    };

    let mut distance = f64::NAN;
    let status = unsafe {
        dtwsom_distance(a.as_ptr(), a.len(), b.as_ptr(), b.len(), 1, -1, &mut distance)
    };
    assert_eq!(status, DtwsomStatus::Ok);
    assert_eq!(distance, expected.distance());

    let mut alignment: *mut DtwsomAlignment = ptr::null_mut();
    let status = unsafe {
        dtwsom_align(a.as_ptr(), a.len(), b.as_ptr(), b.len(), 1, -1, &mut alignment)
    };
    assert_eq!(status, DtwsomStatus::Ok);
    let mut aligned_distance = f64::NAN;
    let mut len = 0usize;
    unsafe {
        assert_eq!(
            dtwsom_alignment_distance(alignment, &mut aligned_distance),
            DtwsomStatus::Ok
        );
        assert_eq!(dtwsom_alignment_len(alignment, &mut len), DtwsomStatus::Ok);
    }
    assert_eq!(aligned_distance, expected.distance());
    assert_eq!(len, expected.path().len());
    for (at, &(i, j)) in expected.path().matches().iter().enumerate() {
        let (mut fi, mut fj) = (usize::MAX, usize::MAX);
        let status = unsafe { dtwsom_alignment_pair(alignment, at, &mut fi, &mut fj) };
        assert_eq!(status, DtwsomStatus::Ok);
        assert_eq!((fi, fj), (i, j));
    }
    let (mut fi, mut fj) = (0usize, 0usize);
    let status = unsafe { dtwsom_alignment_pair(alignment, len, &mut fi, &mut fj) };
    assert_eq!(status, DtwsomStatus::IndexOutOfRange);
    assert!(last_error().contains("out of range"));
    unsafe { dtwsom_alignment_free(alignment) };
}

#[test]
fn failures_set_statuses_and_messages() {
    let a = [0.0, 1.0, 2.0, 3.0];
    let b = [0.0, 1.0];
    let mut distance = f64::NAN;

    // Window 1 cannot bridge a length gap of 2.
    let status = unsafe {
        dtwsom_distance(a.as_ptr(), a.len(), b.as_ptr(), b.len(), 1, 1, &mut distance)
    };
    assert_eq!(status, DtwsomStatus::InfeasibleWindow);
    assert!(last_error().contains("window"));

    let status = unsafe {
        dtwsom_distance(
            ptr::null(),
            a.len(),
            b.as_ptr(),
            b.len(),
            1,
            -1,
            &mut distance,
        )
    };
    assert_eq!(status, DtwsomStatus::NullPointer);

    let status = unsafe {
        dtwsom_distance(a.as_ptr(), a.len(), b.as_ptr(), b.len(), 1, -1, ptr::null_mut())
    };
    assert_eq!(status, DtwsomStatus::NullPointer);

    let nan = [f64::NAN, 1.0];
    let status = unsafe {
        dtwsom_distance(nan.as_ptr(), 2, b.as_ptr(), b.len(), 1, -1, &mut distance)
    };
    assert_eq!(status, DtwsomStatus::InvalidArgument);

    let mut patterns: *mut DtwsomPatterns = ptr::null_mut();
    assert_eq!(
        unsafe { dtwsom_patterns_new(0, &mut patterns) },
        DtwsomStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { dtwsom_patterns_synthetic(0, 1, &mut patterns) },
        DtwsomStatus::InvalidArgument
    );

    // Anchors promised but not provided.
    assert_eq!(
        unsafe { dtwsom_patterns_synthetic(9, 1, &mut patterns) },
        DtwsomStatus::Ok
    );
    let mut network: *mut DtwsomNetwork = ptr::null_mut();
    let status = unsafe {
        dtwsom_network_train(
            patterns,
            2,
            2,
            1,
            0.1,
            0.0,
            -1,
            0,
            ptr::null(),
            2,
            &mut network,
        )
    };
    assert_eq!(status, DtwsomStatus::NullPointer);

    // Invalid learning rate is caught by the training configuration.
    let status = unsafe {
        dtwsom_network_train(
            patterns,
            2,
            2,
            1,
            0.0,
            0.0,
            -1,
            0,
            ptr::null(),
            0,
            &mut network,
        )
    };
    assert_eq!(status, DtwsomStatus::InvalidArgument);
    unsafe { dtwsom_patterns_free(patterns) };
}

#[test]
fn pattern_lists_round_trip_values() {
    let mut patterns: *mut DtwsomPatterns = ptr::null_mut();
    assert_eq!(unsafe { dtwsom_patterns_new(2, &mut patterns) }, DtwsomStatus::Ok);
    let point_major = [1.0, 10.0, 2.0, 20.0, 3.0, 30.0];
    assert_eq!(
        unsafe { dtwsom_patterns_push(patterns, point_major.as_ptr(), 3) },
        DtwsomStatus::Ok
    );
    let mut len = 0usize;
    let mut dim = 0usize;
    unsafe {
        assert_eq!(dtwsom_patterns_len(patterns, &mut len), DtwsomStatus::Ok);
        assert_eq!(dtwsom_patterns_dim(patterns, &mut dim), DtwsomStatus::Ok);
    }
    assert_eq!((len, dim), (1, 2));
    let mut points = 0usize;
    assert_eq!(
        unsafe { dtwsom_patterns_sequence_len(patterns, 0, &mut points) },
        DtwsomStatus::Ok
    );
    assert_eq!(points, 3);
    let mut buffer = [0.0f64; 6];
    assert_eq!(
        unsafe { dtwsom_patterns_sequence_values(patterns, 0, buffer.as_mut_ptr(), 6) },
        DtwsomStatus::Ok
    );
    assert_eq!(buffer, point_major);
    assert_eq!(
        unsafe { dtwsom_patterns_sequence_values(patterns, 0, buffer.as_mut_ptr(), 5) },
        DtwsomStatus::BufferTooSmall
    );
    assert!(last_error().contains("6"));
    assert_eq!(
        unsafe { dtwsom_patterns_sequence_len(patterns, 1, &mut points) },
        DtwsomStatus::IndexOutOfRange
    );
    unsafe { dtwsom_patterns_free(patterns) };
}

#[test]
fn training_analysis_and_json_round_trip_work_end_to_end() {
    let mut patterns: *mut DtwsomPatterns = ptr::null_mut();
    assert_eq!(
        unsafe { dtwsom_patterns_synthetic(12, 7, &mut patterns) },
        DtwsomStatus::Ok
    );
    let mut count = 0usize;
    unsafe {
        assert_eq!(dtwsom_patterns_len(patterns, &mut count), DtwsomStatus::Ok);
    }
    assert_eq!(count, 12);

    let anchors = [0usize, 1, 2];
    let mut network: *mut DtwsomNetwork = ptr::null_mut();
    let status = unsafe {
        dtwsom_network_train(
            patterns,
            2,
            2,
            3,
            0.1,
            0.0,
            -1,
            7,
            anchors.as_ptr(),
            anchors.len(),
            &mut network,
        )
    };
    assert_eq!(status, DtwsomStatus::Ok);

    let (mut rows, mut cols, mut dim, mut epoch) = (0usize, 0usize, 0usize, 0usize);
    unsafe {
        assert_eq!(dtwsom_network_shape(network, &mut rows, &mut cols), DtwsomStatus::Ok);
        assert_eq!(dtwsom_network_dim(network, &mut dim), DtwsomStatus::Ok);
        assert_eq!(dtwsom_network_epoch(network, &mut epoch), DtwsomStatus::Ok);
    }
    assert_eq!((rows, cols, dim, epoch), (2, 2, 1, 3));

    let mut trace_len = 0usize;
    unsafe {
        assert_eq!(dtwsom_network_trace_len(network, &mut trace_len), DtwsomStatus::Ok);
    }
    assert_eq!(trace_len, 3);
    let mut qe = [0.0f64; 3];
    let mut alphas = [0.0f64; 3];
    let mut radii = [0.0f64; 3];
    unsafe {
        assert_eq!(
            dtwsom_network_trace_quantization_error(network, qe.as_mut_ptr(), 3),
            DtwsomStatus::Ok
        );
        assert_eq!(
            dtwsom_network_trace_alpha(network, alphas.as_mut_ptr(), 3),
            DtwsomStatus::Ok
        );
        assert_eq!(
            dtwsom_network_trace_radius(network, radii.as_mut_ptr(), 3),
            DtwsomStatus::Ok
        );
    }
    assert!(qe.iter().all(|q| q.is_finite() && *q >= 0.0));
    assert!(alphas.windows(2).all(|w| w[0] > w[1]));
    assert!(radii.windows(2).all(|w| w[0] >= w[1]));

    // BMU and quantization error agree with direct recomputation.
    let mut first = [0.0f64; 30];
    let mut first_len = 0usize;
    unsafe {
        assert_eq!(
            dtwsom_patterns_sequence_len(patterns, 0, &mut first_len),
            DtwsomStatus::Ok
        );
        assert_eq!(
            dtwsom_patterns_sequence_values(patterns, 0, first.as_mut_ptr(), 30),
            DtwsomStatus::Ok
        );
    }
    let mut unit = usize::MAX;
    let mut bmu_distance = f64::NAN;
    let status = unsafe {
        dtwsom_network_bmu(network, first.as_ptr(), first_len, &mut unit, &mut bmu_distance)
    };
    assert_eq!(status, DtwsomStatus::Ok);
    assert!(unit < 4);
    assert!(bmu_distance.is_finite());

    let mut qe_now = f64::NAN;
    assert_eq!(
        unsafe { dtwsom_network_quantization_error(network, patterns, &mut qe_now) },
        DtwsomStatus::Ok
    );
    assert!(qe_now >= 0.0);

    let mut u = [f64::NAN; 4];
    assert_eq!(
        unsafe { dtwsom_network_u_matrix(network, u.as_mut_ptr(), 4) },
        DtwsomStatus::Ok
    );
    assert!(u.iter().all(|v| v.is_finite() && *v >= 0.0));
    let mut winners = [0usize; 4];
    assert_eq!(
        unsafe { dtwsom_network_winner_counts(network, patterns, winners.as_mut_ptr(), 4) },
        DtwsomStatus::Ok
    );
    assert_eq!(winners.iter().sum::<usize>(), 12);
    assert_eq!(
        unsafe { dtwsom_network_u_matrix(network, u.as_mut_ptr(), 3) },
        DtwsomStatus::BufferTooSmall
    );

    // JSON round trip preserves every unit bit for bit.
    let mut text: *mut std::ffi::c_char = ptr::null_mut();
    assert_eq!(
        unsafe { dtwsom_network_to_json(network, &mut text) },
        DtwsomStatus::Ok
    );
    let mut restored: *mut DtwsomNetwork = ptr::null_mut();
    assert_eq!(
        unsafe { dtwsom_network_from_json(text, &mut restored) },
        DtwsomStatus::Ok
    );
    unsafe { dtwsom_string_free(text) };
    for at in 0..4usize {
        let (mut len_a, mut len_b) = (0usize, 0usize);
        unsafe {
            assert_eq!(
                dtwsom_network_unit_len(network, at, &mut len_a),
                DtwsomStatus::Ok
            );
            assert_eq!(
                dtwsom_network_unit_len(restored, at, &mut len_b),
                DtwsomStatus::Ok
            );
        }
        assert_eq!(len_a, len_b);
        let mut values_a = vec![0.0f64; len_a];
        let mut values_b = vec![0.0f64; len_b];
        unsafe {
            assert_eq!(
                dtwsom_network_unit_values(network, at, values_a.as_mut_ptr(), len_a),
                DtwsomStatus::Ok
            );
            assert_eq!(
                dtwsom_network_unit_values(restored, at, values_b.as_mut_ptr(), len_b),
                DtwsomStatus::Ok
            );
        }
        assert_eq!(values_a, values_b);
    }
    let mut restored_trace_len = usize::MAX;
    unsafe {
        assert_eq!(
            dtwsom_network_trace_len(restored, &mut restored_trace_len),
            DtwsomStatus::Ok
        );
    }
    assert_eq!(restored_trace_len, 0, "the trace is not serialized");
    let status = unsafe { dtwsom_network_from_json(ptr::null(), &mut restored) };
    assert_eq!(status, DtwsomStatus::NullPointer);
    let bad = std::ffi::CString::new("not json {").unwrap();
    let mut bogus: *mut DtwsomNetwork = ptr::null_mut();
    let status = unsafe { dtwsom_network_from_json(bad.as_ptr(), &mut bogus) };
    assert_eq!(status, DtwsomStatus::JsonError);

    unsafe {
        dtwsom_network_free(restored);
        dtwsom_network_free(network);
        dtwsom_patterns_free(patterns);
    }
}

#[test]
fn motif_extraction_feeds_training_through_the_abi() {
    // Two exact copies of a composite wave in noiseless surroundings.
    let mut series = vec![0.0f64; 600];
    for (at, value) in series.iter_mut().enumerate() {
        *value = (at as f64 * 0.05).sin() * 0.2;
    }
    for start in [100usize, 400] {
        for t in 0..40 {
            let phase = t as f64 / 40.0;
            series[start + t] =
                (std::f64::consts::TAU * 2.0 * phase).sin() * 2.0 + phase * 0.5;
        }
    }

    let profile_len = series.len() - 40 + 1;
    let mut distances = vec![f64::NAN; profile_len];
    let mut indices = vec![usize::MAX; profile_len];
    let status = unsafe {
        dtwsom_matrix_profile(
            series.as_ptr(),
            series.len(),
            40,
            distances.as_mut_ptr(),
            indices.as_mut_ptr(),
            profile_len,
        )
    };
    assert_eq!(status, DtwsomStatus::Ok);
    let expected = {
        let long = dtwsom::LongSeries::from_values(series.clone(), 1).unwrap();
        dtwsom::matrix_profile(&long, 40).unwrap()
    };
    assert_eq!(distances, expected.distances());
    assert_eq!(indices, expected.indices());

    let mut motifs: *mut DtwsomMotifs = ptr::null_mut();
    let status = unsafe {
        dtwsom_extract_motifs(series.as_ptr(), series.len(), 40, 5, &mut motifs)
    };
    assert_eq!(status, DtwsomStatus::Ok);
    let (mut count, mut window) = (0usize, 0usize);
    unsafe {
        assert_eq!(dtwsom_motifs_len(motifs, &mut count), DtwsomStatus::Ok);
        assert_eq!(dtwsom_motifs_window(motifs, &mut window), DtwsomStatus::Ok);
    }
    assert!(count >= 1);
    assert_eq!(window, 40);

    // The planted pair is the most significant motif.
    let (mut center_offset, mut pair_distance, mut member_count) = (0usize, f64::NAN, 0usize);
    let status = unsafe {
        dtwsom_motifs_info(
            motifs,
            0,
            &mut center_offset,
            &mut pair_distance,
            &mut member_count,
        )
    };
    assert_eq!(status, DtwsomStatus::Ok);
    assert!(member_count >= 2);
    assert!(pair_distance >= 0.0);
    let mut members = vec![usize::MAX; member_count];
    assert_eq!(
        unsafe { dtwsom_motifs_member_offsets(motifs, 0, members.as_mut_ptr(), member_count) },
        DtwsomStatus::Ok
    );
    assert!(members.contains(&100) && members.contains(&400));
    assert!(members.contains(&center_offset));
    let mut center = vec![f64::NAN; window];
    assert_eq!(
        unsafe { dtwsom_motifs_center_values(motifs, 0, center.as_mut_ptr(), window) },
        DtwsomStatus::Ok
    );
    assert!(center.iter().all(|v| v.is_finite()));

    let mut patterns: *mut DtwsomPatterns = ptr::null_mut();
    assert_eq!(
        unsafe { dtwsom_motifs_to_patterns(motifs, &mut patterns) },
        DtwsomStatus::Ok
    );
    let mut pattern_count = 0usize;
    unsafe {
        assert_eq!(dtwsom_patterns_len(patterns, &mut pattern_count), DtwsomStatus::Ok);
    }
    assert_eq!(pattern_count, count);

    let mut network: *mut DtwsomNetwork = ptr::null_mut();
    let status = unsafe {
        dtwsom_network_train(
            patterns,
            1,
            1,
            2,
            0.2,
            0.0,
            -1,
            3,
            ptr::null(),
            0,
            &mut network,
        )
    };
    assert_eq!(status, DtwsomStatus::Ok);
    let mut epoch = 0usize;
    unsafe {
        assert_eq!(dtwsom_network_epoch(network, &mut epoch), DtwsomStatus::Ok);
    }
    assert_eq!(epoch, 2);

    let status = unsafe { dtwsom_motifs_info(motifs, count, &mut center_offset, &mut pair_distance, &mut member_count) };
    assert_eq!(status, DtwsomStatus::IndexOutOfRange);

    unsafe {
        dtwsom_network_free(network);
        dtwsom_patterns_free(patterns);
        dtwsom_motifs_free(motifs);
    }
}
