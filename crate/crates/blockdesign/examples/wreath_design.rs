//! The 3-(16,6,140) design: the orbit of a pattern-(4,2) base block under
//! S8 wr S2 acting imprimitively on 16 points.
//!
//! ```bash
//! cargo run --release --example wreath_design
//! ```

use blockdesign::catalog::wreath_product_imprimitive;
use blockdesign::design::{block_orbit, points_from_mask, Verification};
use blockdesign::sieve::divisibility_conditions;

fn main() {
    let g = wreath_product_imprimitive(8, 2).unwrap();
    println!("group: S8 wr S2 on 16 points, order {}", g.order());

    let profile = g.subdegrees(1).unwrap();
    println!("subdegrees: {} (rank {})", profile, profile.rank());
    for system in g.block_systems().unwrap() {
        println!(
            "block system: {} classes of size {}",
            system.class_count(),
            system.class_size()
        );
    }

    let base = [1, 2, 3, 4, 9, 10];
    let design = block_orbit(&g, &base).unwrap();
    println!("\norbit of {:?}: {} blocks", base, design.num_blocks());

    match design.verify(3).unwrap() {
        Verification::Design(p) => {
            println!("verified: {} with b={} r={}", p, p.b, p.r);
            println!("nontrivial: {}", p.is_nontrivial());

            // every block meets the two classes in sizes {4, 2}
            let lower: u64 = 0x00ff;
            let all_pattern = design.blocks().iter().all(|&b| {
                let s = (b & lower).count_ones();
                s.min(6 - s) == 2
            });
            println!("every block has class pattern (4,2): {}", all_pattern);

            // the subdegree divisibility conditions
            for d in profile.nontrivial() {
                let (first, second) =
                    divisibility_conditions(p.v, p.k, p.lambda, d as u64).unwrap();
                println!(
                    "subdegree d={}: r | k*lambda*d*(d-1): {}, (v-1)(v-2) | k(k-1)(k-2)d(d-1): {}",
                    d, first, second
                );
            }

            println!("\nfirst blocks of the design file:");
            for i in 0..5 {
                println!("  {:?}", points_from_mask(design.blocks()[i]));
            }
        }
        other => println!("unexpected: {:?}", other),
    }
}
