//! The binary affine plane designs: points and planes of AG(d,2) form a
//! 3-(2^d, 4, 1) design, block-transitive under AGL(d,2).
//!
//! ```bash
//! cargo run --example affine_planes
//! ```

use blockdesign::catalog::affine_general_linear_gf2;
use blockdesign::design::{affine_planes_gf2, Verification};

fn main() {
    for dim in 3..=5 {
        let design = affine_planes_gf2(dim).unwrap();
        match design.verify(3).unwrap() {
            Verification::Design(p) => {
                println!("AG({},2): {} with b={} r={}", dim, p, p.b, p.r)
            }
            other => println!("AG({},2): unexpected {:?}", dim, other),
        }
    }

    let g = affine_general_linear_gf2(3).unwrap();
    println!("\nAGL(3,2): order {} (8 * 168)", g.order());
    let design = affine_planes_gf2(3).unwrap();
    let one_block = design.block_points(0);
    println!("a plane: {:?}", one_block);
    let orbit = blockdesign::design::block_orbit(&g, &one_block).unwrap();
    println!(
        "its AGL(3,2)-orbit recovers the whole design: {}",
        orbit == design
    );
    let pencil = design.pencil(1).unwrap();
    println!("pencil of point 1: {} planes (r)", pencil.size());
}
