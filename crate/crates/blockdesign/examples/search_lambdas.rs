//! Searches every imprimitive fixture group for block orbits of pattern
//! (4,2) that form 3-designs, and reports the lambda values achieved.
//!
//! With an externally supplied catalog of all transitive groups of degree
//! 16 (see the README for the file format), the same search enumerates
//! every block-transitive point-imprimitive 3-(16,6,lambda) design.
//!
//! ```bash
//! cargo run --release --example search_lambdas
//! ```

use blockdesign::catalog::builtin_fixtures;
use blockdesign::commands::pattern_orbit_search;
use blockdesign::sieve::IntersectionPattern;

fn main() {
    let pattern = IntersectionPattern::new(&[4, 2]).unwrap();
    let mut lambdas: Vec<u64> = Vec::new();

    for record in &builtin_fixtures().records {
        let g = record.group();
        let outcome = pattern_orbit_search(&g, &pattern).unwrap();
        print!(
            "{:<12} orbits={:<4} designs={:<2}",
            record.name,
            outcome.orbits_tested,
            outcome.hits.len()
        );
        let mut seen: Vec<u64> = outcome.hits.iter().map(|h| h.params.lambda).collect();
        seen.sort_unstable();
        seen.dedup();
        println!(
            " lambda: {}",
            if seen.is_empty() {
                "-".to_string()
            } else {
                seen.iter()
                    .map(u64::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            }
        );
        lambdas.extend(seen);
    }

    lambdas.sort_unstable();
    lambdas.dedup();
    println!(
        "\nall lambda values from the bundled sample: {}",
        lambdas
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    );
}
