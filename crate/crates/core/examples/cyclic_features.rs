//! Average |CAC| of the 20 MHz target and the 40 MHz interferer over a grid of
//! cyclic frequencies. The target shows a line at its symbol rate; at that
//! frequency the interferer only leaks through the finite observation length.

use cyclic_wcl::cyclostat::cac;
use cyclic_wcl::seed;
use cyclic_wcl::waveform::{generate_qam, WaveformParams};

fn main() -> cyclic_wcl::Result<()> {
    let wf = |order, symbol_rate| WaveformParams {
        modulation_order: order,
        symbol_rate,
        rolloff: 0.35,
        sample_rate: 200e6,
        num_samples: 5000,
        seed: 0,
    };
    let target = wf(4, 20e6);
    let interferer = wf(64, 40e6);
    let draws = 50;
    println!("{:>10} {:>12} {:>12}", "alpha MHz", "|R_t|", "|R_i|");
    for step in 0..=20 {
        let alpha = step as f64 * 2.5e6;
        let (mut t, mut i) = (0.0, 0.0);
        for d in 0..draws {
            let st = generate_qam(&target.with_seed(seed::derive(1, &[d])))?;
            let si = generate_qam(&interferer.with_seed(seed::derive(2, &[d])))?;
            t += cac(&st, alpha, 200e6).value.norm();
            i += cac(&si, alpha, 200e6).value.norm();
        }
        println!(
            "{:10.1} {:12.5} {:12.5}",
            alpha / 1e6,
            t / draws as f64,
            i / draws as f64
        );
    }
    Ok(())
}
