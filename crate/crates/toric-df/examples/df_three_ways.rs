//! The Donaldson-Futaki invariant of a toric test configuration by three
//! independent routes: the intersection pairing, Atiyah-Bott fixed point
//! localisation, and convex geometry on the momentum polytope.
//!
//! ```bash
//! cargo run --example df_three_ways
//! ```

use num_bigint::BigInt;
use num_rational::BigRational as Rat;
use toric_df::corpus;
use toric_df::testconfig::{df_localised, df_report};

fn rq(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

fn main() {
    let cases = [
        ("degeneration to the normal cone of a point in the line, r = 1/2",
         corpus::normal_cone_p1(&rq(1, 2)).unwrap()),
        ("ruled surface as a product configuration for the line, r = 1/3",
         corpus::hirzebruch_product(&rq(1, 3)).unwrap()),
        ("trivial configuration of the line",
         corpus::trivial_p1().unwrap()),
        ("anticanonical degeneration to the normal cone of the exceptional curve",
         corpus::blowup_plane_threefold().unwrap()),
    ];
    for (name, tc) in cases {
        let report = df_report(&tc).unwrap();
        println!("{name}");
        println!("  intersection pairing : {}", report.value_intersection);
        println!("  localisation         : {}", report.value_localised);
        println!("  momentum polytope    : {}", report.value_polytope);
        println!("  slope constant c     : {}", report.slope);
        // The localisation report also carries per fixed point terms.
        let loc = df_localised(&tc, None).unwrap();
        println!("  fixed points         : {}", loc.rows.len());
        for row in loc.rows.iter().take(3) {
            println!(
                "    cone {:>2}: h = {:>6}, term = {}",
                row.cone, row.h, row.term
            );
        }
        if loc.rows.len() > 3 {
            println!("    ...");
        }
        println!();
    }
}
