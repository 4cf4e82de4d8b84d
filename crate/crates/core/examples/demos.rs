//! Runs every worked-example demo with default parameters, or the ids given
//! on the command line.

use hyperfield::demo::{run_demo, DemoParams, DEMO_IDS};
use hyperfield::duality::SpectralConfig;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let ids: Vec<&str> = if args.is_empty() { DEMO_IDS.to_vec() } else { args.iter().map(String::as_str).collect() };
    let params = DemoParams::default();
    let mut failed = 0;
    for id in ids {
        match run_demo(id, &params, &SpectralConfig::default()) {
            Ok(r) => {
                print!("{}", r.render());
                failed += usize::from(!r.passed());
            }
            Err(e) => {
                eprintln!("demo {id}: {e}");
                failed += 1;
            }
        }
    }
    std::process::exit(i32::from(failed > 0));
}
