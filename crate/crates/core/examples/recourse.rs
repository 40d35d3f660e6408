//! Total recolorings on `tracks` workloads of growing size.
//!
//! `cargo run --release -p unit-recolor --example recourse -- 4 1000,4000,16000`

use std::time::Instant;

use unit_recolor::incremental::Engine;
use unit_recolor::workload::{generate, Generator, WorkloadConfig};

fn main() {
    let mut args = std::env::args().skip(1);
    let k: usize = args.next().map_or(4, |s| s.parse().expect("k"));
    let sizes: Vec<usize> = args
        .next()
        .unwrap_or_else(|| "1000,4000".into())
        .split(',')
        .map(|s| s.parse().expect("n"))
        .collect();
    let generator: Generator = args
        .next()
        .map_or(Generator::Tracks, |s| s.parse().expect("generator"));
    println!("k,n,seed,total,per_insert,max_window,secs");
    for n in sizes {
        for seed in 0..3 {
            let start = Instant::now();
            let mut e = Engine::new(k).unwrap();
            let mut max_window = 0;
            for x in generate(&WorkloadConfig { k, n, seed, generator }) {
                max_window = max_window.max(e.insert(x).unwrap().window);
            }
            let total = e.stats().total;
            println!(
                "{k},{n},{seed},{total},{:.3},{max_window},{:.2}",
                total as f64 / n as f64,
                start.elapsed().as_secs_f64()
            );
        }
    }
}
