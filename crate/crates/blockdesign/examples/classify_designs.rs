//! Classifies the designs found in the bundled sample up to isomorphism
//! and prints the per-lambda class counts.
//!
//! ```bash
//! cargo run --release --example classify_designs
//! ```

use blockdesign::catalog::builtin_fixtures;
use blockdesign::classify::{canonical_form, iso_classes};
use blockdesign::commands::pattern_orbit_search;
use blockdesign::design::Design;
use blockdesign::perm::Permutation;
use blockdesign::sieve::IntersectionPattern;

fn main() {
    let pattern = IntersectionPattern::new(&[4, 2]).unwrap();
    let mut designs: Vec<Design> = Vec::new();
    let mut lambdas: Vec<u64> = Vec::new();
    for record in &builtin_fixtures().records {
        let outcome = pattern_orbit_search(&record.group(), &pattern).unwrap();
        for hit in outcome.hits {
            lambdas.push(hit.params.lambda);
            designs.push(hit.design);
        }
    }
    println!("designs from the bundled sample: {}", designs.len());

    let classes = iso_classes(&designs).unwrap();
    println!("isomorphism classes: {}", classes.len());
    let mut per_lambda: Vec<(u64, usize)> = Vec::new();
    for class in &classes {
        let l = lambdas[class[0]];
        match per_lambda.iter_mut().find(|(k, _)| *k == l) {
            Some((_, n)) => *n += 1,
            None => per_lambda.push((l, 1)),
        }
    }
    per_lambda.sort_unstable();
    println!(
        "lambda  {}",
        per_lambda
            .iter()
            .map(|(l, _)| l.to_string())
            .collect::<Vec<_>>()
            .join("  ")
    );
    println!(
        "n       {}",
        per_lambda
            .iter()
            .map(|(_, n)| n.to_string())
            .collect::<Vec<_>>()
            .join("   ")
    );

    // a canonical form is a relabeling; its certificate reproduces it
    let form = canonical_form(&designs[0]).unwrap();
    let relabeled = designs[0].relabel(&form.certificate).unwrap();
    println!(
        "\ncertificate check on the first design: {}",
        relabeled.blocks() == form.blocks.as_slice()
    );

    // classification is stable under relabeling
    let sigma = Permutation::from_cycles(16, &[&[1, 16], &[2, 9, 5]]).unwrap();
    let shuffled: Vec<Design> = designs.iter().map(|d| d.relabel(&sigma).unwrap()).collect();
    let again = iso_classes(&shuffled).unwrap();
    println!(
        "same classes after relabeling every design: {}",
        again == classes
    );
}
