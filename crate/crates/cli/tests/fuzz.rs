#[path = "support/fuzz.rs"]
mod support;

#[test]
fn parser_survives_random_input() {
    let stats = support::fuzz(100_000, 0x5eed, &support::golden_jobs()).unwrap();
    assert!(stats.ok > 20_000, "{stats:?}");
    assert!(stats.parse_errors > 10_000, "{stats:?}");
    assert!(stats.validation_errors > 1_000, "{stats:?}");
}

#[test]
fn generated_jobs_parse() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..2_000 {
        let src = support::valid_job(&mut rng);
        if let Err(e) = ramislope_cli::parse_job(src.as_bytes()) {
            panic!("{e}\n{src}");
        }
    }
}
