//! Group catalogs: the bundled fixture groups, programmatic constructions
//! (wreath products, affine groups), and the catalog file format.
//!
//! Catalog format, bit-exact: records separated by blank lines, each record
//!
//! ```text
//! GROUP <name>
//! DEGREE <n>
//! GEN <i1> <i2> ... <in>
//! ```
//!
//! with one `GEN` line per generator giving 1-based images. Exports from
//! other systems convert with a one-line script; no cycle notation.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

#[derive(Clone)]
pub struct GroupRecord {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Permutation>,
}

impl GroupRecord {
    pub fn group(&self) -> PermGroup {
        PermGroup::new(self.generators.clone()).expect("validated at construction")
    }
}

impl fmt::Debug for GroupRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GroupRecord({}, degree {}, {} generators)",
            self.name,
            self.degree,
            self.generators.len()
        )
    }
}

pub struct Catalog {
    pub records: Vec<GroupRecord>,
    pub source: String,
}

impl Catalog {
    pub fn get(&self, name: &str) -> Result<&GroupRecord> {
        self.records
            .iter()
            .find(|r| r.name == name)
            .ok_or_else(|| Error::UnknownGroup(name.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, rec) in self.records.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            out.push_str(&format!("GROUP {}\n", rec.name));
            out.push_str(&format!("DEGREE {}\n", rec.degree));
            for g in &rec.generators {
                out.push_str("GEN");
                for &img in g.images() {
                    out.push_str(&format!(" {}", img));
                }
                out.push('\n');
            }
        }
        out
    }
}

pub fn parse_catalog(text: &str) -> Result<Catalog> {
    let mut records: Vec<GroupRecord> = Vec::new();
    let mut lines = text.lines().enumerate().peekable();

    while let Some(&(_, peeked)) = lines.peek() {
        if peeked.trim().is_empty() {
            lines.next();
            continue;
        }
        // GROUP line
        let (lno, line) = lines.next().unwrap();
        let group_line = lno + 1;
        let name = line
            .strip_prefix("GROUP ")
            .map(str::trim)
            .filter(|s| !s.is_empty() && !s.contains(char::is_whitespace))
            .ok_or_else(|| Error::parse(lno + 1, 1, "expected `GROUP <name>`"))?
            .to_string();
        if records.iter().any(|r| r.name == name) {
            return Err(Error::parse(
                lno + 1,
                7,
                format!("duplicate group name {:?}", name),
            ));
        }
        // DEGREE line
        let (lno, line) = lines
            .next()
            .ok_or_else(|| Error::parse(lno + 2, 1, "expected `DEGREE <n>`"))?;
        let degree: usize = line
            .strip_prefix("DEGREE ")
            .and_then(|s| s.trim().parse().ok())
            .filter(|&n| n >= 1)
            .ok_or_else(|| Error::parse(lno + 1, 1, "expected `DEGREE <n>`"))?;
        // GEN lines until blank or EOF
        let mut generators = Vec::new();
        while let Some(&(glno, gline)) = lines.peek() {
            if gline.trim().is_empty() {
                break;
            }
            lines.next();
            let rest = gline
                .strip_prefix("GEN ")
                .ok_or_else(|| Error::parse(glno + 1, 1, "expected `GEN <images>`"))?;
            let mut images = Vec::with_capacity(degree);
            for (col, token) in rest.split_whitespace().enumerate() {
                let img: usize = token.parse().map_err(|_| {
                    Error::parse(glno + 1, col + 1, format!("bad image {:?}", token))
                })?;
                images.push(img);
            }
            if images.len() != degree {
                return Err(Error::parse(
                    glno + 1,
                    1,
                    format!("expected {} images, found {}", degree, images.len()),
                ));
            }
            let perm = Permutation::from_images(images)
                .map_err(|e| Error::parse(glno + 1, 1, e.to_string()))?;
            generators.push(perm);
        }
        if generators.is_empty() {
            return Err(Error::parse(
                group_line,
                1,
                format!("group {:?} has no generators", name),
            ));
        }
        records.push(GroupRecord {
            name,
            degree,
            generators,
        });
    }

    Ok(Catalog {
        records,
        source: "text".into(),
    })
}

/// `S_c wr S_d` in its imprimitive action on `c * d` points, with classes
/// `{1..c}, {c+1..2c}, ...`: generators of `S_c` on the first class, a
/// blockwise d-cycle, and for d > 2 a blockwise swap of the first two
/// classes.
pub fn wreath_product_imprimitive(c: usize, d: usize) -> Result<PermGroup> {
    if c < 2 || d < 2 {
        return Err(Error::InvalidArgument(
            "class size and class count must both be at least 2".into(),
        ));
    }
    let n = c
        .checked_mul(d)
        .filter(|&n| n <= 32)
        .ok_or_else(|| Error::InvalidArgument("degree c*d exceeds 32".into()))?;

    let mut gens = vec![Permutation::from_cycles(n, &[&[1, 2]]).unwrap()];
    if c >= 3 {
        let cycle: Vec<usize> = (1..=c).collect();
        gens.push(Permutation::from_cycles(n, &[&cycle]).unwrap());
    }
    // blockwise d-cycle: class j -> class j+1
    let images: Vec<usize> = (1..=n).map(|x| (x + c - 1) % n + 1).collect();
    gens.push(Permutation::from_images(images).unwrap());
    if d >= 3 {
        let images: Vec<usize> = (1..=n)
            .map(|x| {
                if x <= c {
                    x + c
                } else if x <= 2 * c {
                    x - c
                } else {
                    x
                }
            })
            .collect();
        gens.push(Permutation::from_images(images).unwrap());
    }
    PermGroup::new(gens)
}

/// Permutation of `1..=n` from a 0-based point map.
fn perm_from_fn(n: usize, f: impl Fn(usize) -> usize) -> Permutation {
    let images: Vec<usize> = (0..n).map(|x| f(x) + 1).collect();
    Permutation::from_images(images).expect("bijective point map")
}

/// Translation `x -> x xor v` on `GF(2)^dim`, points numbered `1..=2^dim`.
fn translation(dim: usize, v: usize) -> Permutation {
    perm_from_fn(1 << dim, |x| x ^ v)
}

/// Linear map on `GF(2)^dim` given by matrix columns (`cols[j]` is the image
/// of basis vector `e_j`, packed as bits).
fn linear_map(dim: usize, cols: &[usize]) -> Permutation {
    perm_from_fn(1 << dim, |x| {
        let mut y = 0;
        for (j, &col) in cols.iter().enumerate() {
            if x >> j & 1 == 1 {
                y ^= col;
            }
        }
        y
    })
}

/// `AGL(dim, 2)` acting on the `2^dim` vectors: all translations plus the
/// general linear group, generated by a transvection and a basis cycle.
pub fn affine_general_linear_gf2(dim: usize) -> Result<PermGroup> {
    if !(2..=6).contains(&dim) {
        return Err(Error::InvalidArgument(format!(
            "dimension {} outside 2..=6",
            dim
        )));
    }
    let mut gens = vec![translation(dim, 1)];
    // transvection e0 -> e0, e1 -> e0 + e1
    let mut cols: Vec<usize> = (0..dim).map(|j| 1 << j).collect();
    cols[1] |= 1;
    gens.push(linear_map(dim, &cols));
    // basis cycle e0 -> e1 -> ... -> e0
    let cols: Vec<usize> = (0..dim).map(|j| 1 << ((j + 1) % dim)).collect();
    gens.push(linear_map(dim, &cols));
    PermGroup::new(gens)
}

/// The bundled sample catalog: `S8wrS2` together with proper imprimitive
/// transitive subgroups of degree 16 preserving the standard `(8,2)` system
/// `{1..8} | {9..16}` (points are the vectors of `GF(2)^4`, bit 3 splitting
/// the classes).
pub fn builtin_fixtures() -> Catalog {
    let n = 16;
    let swap = translation(4, 0b1000); // (1 9)(2 10)...(8 16)

    let mut records = Vec::new();

    // Full wreath product S8 wr S2.
    {
        let mut gens = vec![
            Permutation::from_cycles(n, &[&[1, 2]]).unwrap(),
            Permutation::from_cycles(n, &[&[1, 2, 3, 4, 5, 6, 7, 8]]).unwrap(),
            swap.clone(),
        ];
        gens.dedup();
        records.push(GroupRecord {
            name: "S8wrS2".into(),
            degree: n,
            generators: gens,
        });
    }

    // A8 wr S2: even permutations on each class, classes swapped.
    records.push(GroupRecord {
        name: "A8wrS2".into(),
        degree: n,
        generators: vec![
            Permutation::from_cycles(n, &[&[1, 2, 3]]).unwrap(),
            Permutation::from_cycles(n, &[&[2, 3, 4, 5, 6, 7, 8]]).unwrap(),
            swap.clone(),
        ],
    });

    // Stabilizer of the class partition inside AGL(4,2): all translations
    // plus the linear maps fixing span(e0,e1,e2).
    {
        let mut cols: Vec<usize> = vec![1, 2, 4, 8];
        cols[1] |= 1; // transvection on the first three coordinates
        let transvection = linear_map(4, &cols);
        let cycle3 = linear_map(4, &[2, 4, 1, 8]); // e0 -> e1 -> e2 -> e0, e3 fixed
        let shear_e3 = linear_map(4, &[1, 2, 4, 8 | 1]); // e3 -> e0 + e3
        records.push(GroupRecord {
            name: "AffSplit16".into(),
            degree: n,
            generators: vec![
                translation(4, 1),
                translation(4, 0b1000),
                transvection,
                cycle3,
                shear_e3,
            ],
        });
    }

    // AGL(3,2) acting identically on both classes, times the class swap.
    {
        let mut cols: Vec<usize> = vec![1, 2, 4, 8];
        cols[1] |= 1;
        records.push(GroupRecord {
            name: "AGL32diag".into(),
            degree: n,
            generators: vec![
                translation(4, 1),
                linear_map(4, &cols),
                linear_map(4, &[2, 4, 1, 8]),
                swap.clone(),
            ],
        });
    }

    // Frobenius-type affine groups: the translations extended by an
    // order-7 linear map on the first three coordinates (and, in the
    // larger one, the order-3 map normalizing it). Their block orbits
    // realize the small lambda values.
    {
        let seven = linear_map(4, &[2, 4, 3, 8]); // e0 -> e1 -> e2 -> e0+e1
        let three = linear_map(4, &[1, 4, 6, 8]); // squaring on GF(8)
        records.push(GroupRecord {
            name: "E16C7".into(),
            degree: n,
            generators: vec![translation(4, 1), translation(4, 0b1000), seven.clone()],
        });
        records.push(GroupRecord {
            name: "E16F21".into(),
            degree: n,
            generators: vec![translation(4, 1), translation(4, 0b1000), seven, three],
        });
    }

    // Regular elementary abelian group: all translations.
    records.push(GroupRecord {
        name: "E16".into(),
        degree: n,
        generators: vec![
            translation(4, 1),
            translation(4, 2),
            translation(4, 4),
            translation(4, 8),
        ],
    });

    // Regular cyclic group interleaving the two classes.
    {
        let cycle: Vec<usize> = vec![1, 9, 2, 10, 3, 11, 4, 12, 5, 13, 6, 14, 7, 15, 8, 16];
        records.push(GroupRecord {
            name: "C16".into(),
            degree: n,
            generators: vec![Permutation::from_cycles(n, &[&cycle]).unwrap()],
        });
    }

    // Regular C8 x C2: parallel 8-cycles plus the class swap.
    records.push(GroupRecord {
        name: "C8xC2".into(),
        degree: n,
        generators: vec![
            Permutation::from_cycles(
                n,
                &[&[1, 2, 3, 4, 5, 6, 7, 8], &[9, 10, 11, 12, 13, 14, 15, 16]],
            )
            .unwrap(),
            swap,
        ],
    });

    Catalog {
        records,
        source: "builtin".into(),
    }
}

/// Resolves a group source spec: `builtin:<name>`, `file:<path>#<name>`, or
/// a bare path to a single-record catalog file.
pub fn load_group(source: &str) -> Result<(String, PermGroup)> {
    if let Some(name) = source.strip_prefix("builtin:") {
        let catalog = builtin_fixtures();
        let rec = catalog.get(name)?;
        return Ok((rec.name.clone(), rec.group()));
    }
    if let Some(rest) = source.strip_prefix("file:") {
        let (path, name) = rest
            .split_once('#')
            .ok_or_else(|| Error::InvalidArgument("expected file:<path>#<name>".into()))?;
        let text = std::fs::read_to_string(path)?;
        let catalog = parse_catalog(&text)?;
        let rec = catalog.get(name)?;
        return Ok((rec.name.clone(), rec.group()));
    }
    let text = std::fs::read_to_string(source)?;
    let catalog = parse_catalog(&text)?;
    match catalog.records.as_slice() {
        [rec] => Ok((rec.name.clone(), rec.group())),
        [] => Err(Error::InvalidArgument(format!(
            "no group records in {}",
            source
        ))),
        _ => Err(Error::InvalidArgument(format!(
            "{} holds several records; use file:{}#<name>",
            source, source
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wreath_orders() {
        let g = wreath_product_imprimitive(8, 2).unwrap();
        assert_eq!(g.order(), 3_251_404_800); // 2 * (8!)^2
        let g = wreath_product_imprimitive(2, 2).unwrap();
        assert_eq!(g.order(), 8);
        let g = wreath_product_imprimitive(2, 3).unwrap();
        assert_eq!(g.order(), 48); // 2^3 * 3!
        let g = wreath_product_imprimitive(3, 3).unwrap();
        assert_eq!(g.order(), 1296); // 6^3 * 6
    }

    #[test]
    fn wreath_has_expected_block_system() {
        for (c, d) in [(8, 2), (2, 3), (4, 3)] {
            let g = wreath_product_imprimitive(c, d).unwrap();
            let systems = g.block_systems().unwrap();
            assert!(
                systems
                    .iter()
                    .any(|s| s.class_size() == c && s.class_count() == d),
                "no ({},{}) system",
                c,
                d
            );
        }
    }

    #[test]
    fn affine_group_order() {
        assert_eq!(affine_general_linear_gf2(3).unwrap().order(), 1344); // 8 * 168
        assert_eq!(affine_general_linear_gf2(2).unwrap().order(), 24);
    }

    #[test]
    fn fixtures_are_transitive_and_preserve_a_standard_system() {
        let catalog = builtin_fixtures();
        assert!(catalog.get("S8wrS2").is_ok());
        assert!(catalog.records.len() >= 6);
        for rec in &catalog.records {
            let g = rec.group();
            assert!(g.is_transitive(), "{} not transitive", rec.name);
            let systems = g.block_systems().unwrap();
            assert!(
                systems.iter().any(|s| {
                    matches!((s.class_size(), s.class_count()), (8, 2) | (2, 8) | (4, 4))
                }),
                "{} has no (8,2)/(2,8)/(4,4) system",
                rec.name
            );
        }
    }

    #[test]
    fn fixtures_sift_into_the_full_wreath_product() {
        let catalog = builtin_fixtures();
        let big = catalog.get("S8wrS2").unwrap().group();
        for rec in &catalog.records {
            for gen in &rec.generators {
                assert!(big.contains(gen), "{} generator outside S8wrS2", rec.name);
            }
        }
    }

    #[test]
    fn fixture_orders() {
        let catalog = builtin_fixtures();
        let order = |name: &str| catalog.get(name).unwrap().group().order();
        assert_eq!(order("A8wrS2"), 812_851_200); // 2 * (8!/2)^2
        assert_eq!(order("AffSplit16"), 21_504); // 16 * 8 * 168
        assert_eq!(order("AGL32diag"), 2_688); // 1344 * 2
        assert_eq!(order("E16C7"), 112); // 16 * 7
        assert_eq!(order("E16F21"), 336); // 16 * 21
        assert_eq!(order("E16"), 16);
        assert_eq!(order("C16"), 16);
        assert_eq!(order("C8xC2"), 16);
    }

    #[test]
    fn catalog_roundtrip() {
        let catalog = builtin_fixtures();
        let text = catalog.to_text();
        let parsed = parse_catalog(&text).unwrap();
        assert_eq!(parsed.records.len(), catalog.records.len());
        for (a, b) in parsed.records.iter().zip(&catalog.records) {
            assert_eq!(a.name, b.name);
            assert_eq!(a.degree, b.degree);
            assert_eq!(a.generators, b.generators);
        }
        // serialize(parse(text)) == normalize(text)
        assert_eq!(parse_catalog(&text).unwrap().to_text(), text);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_catalog("GROUP g\nDEGREE 3\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_catalog("GROUP g\nDEGREE 3\nGEN 1 2 2\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_catalog("GROUP g\nDEGREE 3\nGEN 1 2\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(
            parse_catalog("GROUP g\nDEGREE 3\nGEN 2 3 1\n\nGROUP g\nDEGREE 3\nGEN 1 2 3\n")
                .is_err()
        );
    }
}
