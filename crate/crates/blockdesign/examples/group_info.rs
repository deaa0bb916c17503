//! Walks the bundled fixture catalog: orders, subdegrees, block systems,
//! and membership of every fixture in the full wreath product.
//!
//! ```bash
//! cargo run --release --example group_info
//! ```

use blockdesign::catalog::builtin_fixtures;

fn main() {
    let catalog = builtin_fixtures();
    let big = catalog.get("S8wrS2").unwrap().group();

    println!(
        "{:<12} {:>13} {:>6} {:>12} {:>8}  systems",
        "group", "order", "rank", "subdegrees", "in S8wrS2"
    );
    for record in &catalog.records {
        let g = record.group();
        let profile = g.subdegrees(1).unwrap();
        let systems = g.block_systems().unwrap();
        let mut shapes: Vec<(usize, usize, usize)> = Vec::new();
        for s in &systems {
            let key = (s.class_size(), s.class_count());
            match shapes.iter_mut().find(|(c, d, _)| (*c, *d) == key) {
                Some((_, _, n)) => *n += 1,
                None => shapes.push((key.0, key.1, 1)),
            }
        }
        let shapes = shapes
            .iter()
            .map(|(c, d, n)| {
                if *n == 1 {
                    format!("({},{})", c, d)
                } else {
                    format!("({},{})x{}", c, d, n)
                }
            })
            .collect::<Vec<_>>()
            .join(",");
        let member = record.generators.iter().all(|gen| big.contains(gen));
        println!(
            "{:<12} {:>13} {:>6} {:>12} {:>8}  {}",
            record.name,
            g.order(),
            profile.rank(),
            profile.to_string(),
            member,
            shapes
        );
    }

    println!("\nhomogeneity of S8 wr S2:");
    let g = catalog.get("S8wrS2").unwrap().group();
    for t in 1..=2 {
        println!("  {}-homogeneous: {}", t, g.is_t_homogeneous(t).unwrap());
    }
}
