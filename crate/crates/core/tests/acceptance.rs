//! Acceptance run: every criterion at default configuration, zero failures
//! allowed. Prints one line per criterion.

use std::time::Instant;

use valring::check::{self, RunConfig, SuiteReport};

fn criterion(k: u8, label: &str, run: impl FnOnce() -> Vec<SuiteReport>) -> bool {
    let start = Instant::now();
    let reports = run();
    let secs = start.elapsed().as_secs_f64();
    let checked: usize = reports.iter().map(|r| r.checked).sum();
    let failures: usize = reports.iter().map(|r| r.failures).sum();
    let pass = failures == 0 && checked > 0;
    println!(
        "criterion {k} {label}: {} ({checked} checks, {failures} failures, {secs:.1}s)",
        if pass { "PASS" } else { "FAIL" }
    );
    for r in reports.iter().filter(|r| !r.pass) {
        for d in &r.details {
            println!("    {}: {d}", r.suite);
        }
    }
    pass
}

#[test]
fn acceptance() {
    let cfg = RunConfig::default();
    cfg.validate().unwrap();
    let cfg = &cfg;
    let one = |f: fn(&RunConfig) -> SuiteReport| move || vec![f(cfg)];
    let results = [
        criterion(1, "dichotomy", one(check::dichotomy)),
        criterion(2, "oracle triangle", one(check::oracle_triangle)),
        criterion(3, "definability coherence", one(check::definability)),
        criterion(4, "translation invariance", one(check::translation)),
        criterion(5, "hensel lifting", one(check::hensel)),
        criterion(6, "n-th power classes", one(check::nth_power)),
        criterion(7, "GL(n, O) generic type", || {
            (1..=3)
                .map(|n| check::gl(cfg, n, check::GlSizes::default()))
                .collect()
        }),
        criterion(8, "witness finding", one(check::witness)),
    ];
    assert!(results.iter().all(|&p| p), "some criteria failed");
}
