//! Integration tests for the batch pipeline: combinatorics of the pair
//! matrices, fault isolation, report emission, and determinism at the
//! library level.

use std::path::{Path, PathBuf};

use crossfrac::pipeline::{
    all_failed, AudioPairOutcome, PearsonCell, ReportFormat, StimulusOutcome,
};
use crossfrac::{emit_report, load_manifest, run_batch, Error, Valence};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

#[test]
fn batch_combinatorics_and_classification() {
    let dir = fixtures();
    let manifest = load_manifest(dir.join("manifest.json")).unwrap();
    let report = run_batch(&manifest, &dir).unwrap();

    assert_eq!(report.stimuli.len(), 12);
    // 6 audio stimuli -> 6 diagonal + 15 off-diagonal pairs; same for images
    assert_eq!(report.audio_pairs.len(), 21);
    assert_eq!(report.image_pairs.len(), 21);
    assert!(!all_failed(&report));

    // clips 1-3 are stationary (alpha < 1.5), clips 4-6 integrated (alpha > 1.5)
    for s in &report.stimuli {
        if let StimulusOutcome::Audio { classification, .. } = &s.outcome {
            let expected = match s.id.as_str() {
                "clip1" | "clip2" | "clip3" => Valence::Happy,
                _ => Valence::Sad,
            };
            assert_eq!(*classification, expected, "stimulus {}", s.id);
        }
    }
    // every image channel produced an exponent
    for s in &report.stimuli {
        if let StimulusOutcome::Image { alpha_mean, .. } = &s.outcome {
            assert!(alpha_mean.is_some(), "stimulus {}", s.id);
        }
    }
    // all four Pearson cells computable with 3-element groups
    for cell in [
        &report.cross_modal.happy_audio_vs_happy_image,
        &report.cross_modal.happy_audio_vs_sad_image,
        &report.cross_modal.sad_audio_vs_happy_image,
        &report.cross_modal.sad_audio_vs_sad_image,
    ] {
        match cell {
            PearsonCell::Ok { value } => assert!(value.abs() <= 1.0),
            PearsonCell::Failed { error } => panic!("pearson cell failed: {error}"),
        }
    }
    assert_eq!(report.cross_modal.happy_audio_ids, ["clip1", "clip2", "clip3"]);
    assert_eq!(report.cross_modal.sad_image_ids, ["img4", "img5", "img6"]);
}

#[test]
fn bad_stimulus_is_isolated() {
    let dir = fixtures();
    let manifest = load_manifest(dir.join("manifest.json")).unwrap();
    let mut with_bad = manifest.clone();
    with_bad.stimuli.insert(
        3,
        crossfrac::StimulusRecord {
            id: "ghost".into(),
            modality: crossfrac::Modality::Audio,
            path: "does-not-exist.wav".into(),
            target: Valence::Happy,
            ratings: Default::default(),
        },
    );

    let clean = run_batch(&manifest, &dir).unwrap();
    let tainted = run_batch(&with_bad, &dir).unwrap();

    let ghost = tainted.stimuli.iter().find(|s| s.id == "ghost").unwrap();
    assert!(matches!(ghost.outcome, StimulusOutcome::Failed { .. }));

    // every other stimulus and every shared pair is numerically untouched
    for s in &clean.stimuli {
        let t = tainted.stimuli.iter().find(|t| t.id == s.id).unwrap();
        assert_eq!(
            serde_json::to_string(&s.outcome).unwrap(),
            serde_json::to_string(&t.outcome).unwrap(),
            "stimulus {} changed",
            s.id
        );
    }
    for p in &clean.audio_pairs {
        let q = tainted
            .audio_pairs
            .iter()
            .find(|q| q.id_a == p.id_a && q.id_b == p.id_b)
            .unwrap();
        assert_eq!(
            serde_json::to_string(&p.outcome).unwrap(),
            serde_json::to_string(&q.outcome).unwrap()
        );
    }
}

#[test]
fn missing_manifest_and_empty_manifest_fail() {
    assert!(matches!(
        load_manifest(fixtures().join("nope.json")),
        Err(Error::ManifestError(_))
    ));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.json");
    std::fs::write(
        &path,
        r#"{ "schema_version": 1, "stimuli": [] }"#,
    )
    .unwrap();
    assert!(matches!(load_manifest(&path), Err(Error::ManifestError(_))));
}

#[test]
fn unequal_audio_lengths_use_common_prefix() {
    // manifest with one full-length and one half-length clip; the pair must
    // still produce a finite lambda instead of a length error
    let dir = fixtures();
    let src = crossfrac::io::load_wav(dir.join("clip1.wav")).unwrap();
    let half = crossfrac::TimeSeries::new(
        src.samples[..src.samples.len() / 2].to_vec(),
        src.sample_rate_hz,
        "half",
    )
    .unwrap();
    let tmp = tempfile::tempdir().unwrap();
    crossfrac::io::write_wav(tmp.path().join("half.wav"), &half).unwrap();
    std::fs::copy(dir.join("clip1.wav"), tmp.path().join("full.wav")).unwrap();

    let manifest: crossfrac::Manifest = serde_json::from_value(serde_json::json!({
        "schema_version": 1,
        "stimuli": [
            { "id": "full", "modality": "audio", "path": "full.wav", "target": "happy", "ratings": {} },
            { "id": "half", "modality": "audio", "path": "half.wav", "target": "sad", "ratings": {} }
        ]
    }))
    .unwrap();
    let report = run_batch(&manifest, tmp.path()).unwrap();
    let cross = report
        .audio_pairs
        .iter()
        .find(|p| p.id_a != p.id_b)
        .unwrap();
    match &cross.outcome {
        AudioPairOutcome::Ok { lambda, .. } => assert!(lambda.is_finite()),
        AudioPairOutcome::Failed { error } => panic!("pair failed: {error}"),
    }
}

#[test]
fn emit_report_writes_all_tables_and_round_trips() {
    let dir = fixtures();
    let manifest = load_manifest(dir.join("manifest.json")).unwrap();
    let report = run_batch(&manifest, &dir).unwrap();
    let out = tempfile::tempdir().unwrap();
    let written = emit_report(&report, out.path(), ReportFormat::Both).unwrap();
    let names: Vec<String> = written
        .iter()
        .map(|p| p.file_name().unwrap().to_string_lossy().into_owned())
        .collect();
    for expected in [
        "report.json",
        "exponents.csv",
        "audio_pairs.csv",
        "image_pairs.csv",
        "pearson.csv",
        "curves.csv",
    ] {
        assert!(names.contains(&expected.to_string()), "missing {expected}");
    }

    // JSON round trip preserves the report
    let text = std::fs::read_to_string(out.path().join("report.json")).unwrap();
    let back: crossfrac::Report = serde_json::from_str(&text).unwrap();
    assert_eq!(
        serde_json::to_string(&report).unwrap(),
        serde_json::to_string(&back).unwrap()
    );

    // exponents.csv has a header plus one row per stimulus
    let mut rdr = csv::Reader::from_path(out.path().join("exponents.csv")).unwrap();
    assert_eq!(rdr.records().count(), 12);
}

#[test]
fn run_batch_is_deterministic() {
    let dir = fixtures();
    let manifest = load_manifest(dir.join("manifest.json")).unwrap();
    let a = serde_json::to_string(&run_batch(&manifest, &dir).unwrap()).unwrap();
    let b = serde_json::to_string(&run_batch(&manifest, &dir).unwrap()).unwrap();
    assert_eq!(a, b);
}
