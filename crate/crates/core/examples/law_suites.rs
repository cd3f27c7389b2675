//! Every law suite with a fixed seed, as `lensfocus check all` would run it.

use lensfocus::check::{run, Config, Scope};

fn main() -> lensfocus::Result<()> {
    let cfg = Config {
        seed: 7,
        trials: 100,
        oracle: true,
        ..Config::default()
    };
    let mut failed = 0;
    for scope in Scope::ALL {
        let report = run(scope, &cfg)?;
        println!("{report}\n");
        failed += usize::from(!report.passed());
    }
    std::process::exit(if failed == 0 { 0 } else { 1 });
}
