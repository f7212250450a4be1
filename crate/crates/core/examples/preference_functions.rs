//! The six preference shapes side by side.
//!
//! ```text
//! cargo run --example preference_functions
//! ```

use outrank::preference::{PreferenceFunction, PreferenceKind, Thresholds};

fn main() -> outrank::Result<()> {
    let th = Thresholds::new(1.0, 3.0, 2.0)?;
    let ds = [-1.0, 0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 6.0];

    print!("{:<22}", "d");
    for d in ds {
        print!("{d:>7}");
    }
    println!();
    for kind in PreferenceKind::ALL {
        let h = PreferenceFunction::new(kind, th)?;
        print!("{:<22}", kind.as_str());
        for d in ds {
            print!("{:>7.3}", h.degree(d)?);
        }
        println!();
    }
    println!("\nq = {}, p = {}, sigma = {}; negative differences never earn preference.", th.q, th.p, th.sigma);
    Ok(())
}
