//! Received target/interferer powers across a seeded layout, next to the
//! thermal noise floor.

use cyclic_wcl::scenario::{mw_to_dbm, noise_power, place_radios, Point, Scenario};

fn main() -> cyclic_wcl::Result<()> {
    let sc = Scenario {
        radio_positions: place_radios(8, 50.0, 1),
        target_position: Point::ORIGIN,
        interferer_position: Point::new(20.0, 20.0),
        p_t_dbm: 10.0,
        p_i_dbm: 30.0,
        d0: 1.0,
        gamma: 3.8,
        noise_psd_dbm_hz: -174.0,
    };
    sc.validate()?;
    println!(
        "noise floor over 200 MHz: {:.2} dBm",
        mw_to_dbm(noise_power(-174.0, 200e6))
    );
    println!("{:>16} {:>10} {:>10} {:>10}", "radio", "p_t dBm", "p_i dBm", "cross");
    for (r, pk) in sc.radio_positions.iter().zip(sc.power_vectors()?) {
        println!(
            "({:6.1}, {:6.1}) {:10.2} {:10.2} {:10.3e}",
            r.x,
            r.y,
            mw_to_dbm(pk.p_tk),
            mw_to_dbm(pk.p_ik),
            pk.cross
        );
    }
    Ok(())
}
