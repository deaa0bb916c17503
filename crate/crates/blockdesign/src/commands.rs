//! Command implementations behind the `blockdesign` binary.
//!
//! Every command returns its full stdout text and an exit code: 0 for
//! success, 1 for an honest negative result (not a design, nothing found,
//! intransitive group), 2 for usage or validation errors. Output is
//! deterministic byte for byte.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use itertools::Itertools;

use crate::catalog::{builtin_fixtures, load_group, parse_catalog, Catalog};
use crate::design::{block_orbit, mask_from_points, Design, DesignParams, Verification};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::sieve::{
    builtin_simple_group_table, diagonal_sieve, imprimitive_partition_sieve,
    parse_simple_group_table, product_action_sieve, twisted_wreath_sieve, IntersectionPattern,
    SieveReport,
};

/// Outcome of a command: exit code 0 (success), 1 (negative result) or
/// 2 (usage/validation error), plus the report text.
pub struct CommandResult {
    pub exit_code: i32,
    pub stdout: String,
}

impl CommandResult {
    fn ok(stdout: String) -> Self {
        CommandResult {
            exit_code: 0,
            stdout,
        }
    }

    fn negative(stdout: String) -> Self {
        CommandResult {
            exit_code: 1,
            stdout,
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        let mut stdout = message.into();
        if !stdout.ends_with('\n') {
            stdout.push('\n');
        }
        CommandResult {
            exit_code: 2,
            stdout,
        }
    }
}

fn usage_from(err: Error) -> CommandResult {
    CommandResult::usage(format!("error: {}", err))
}

// ---------------------------------------------------------------------------
// sieve
// ---------------------------------------------------------------------------

pub fn cmd_sieve(kind: &str, k: u64, table: Option<&Path>) -> CommandResult {
    if !(3..=6).contains(&k) {
        return CommandResult::usage(format!("error: k={} outside 3..=6", k));
    }
    let report: Result<SieveReport> = match kind {
        "imprimitive" => imprimitive_partition_sieve(k).map(SieveReport::Imprimitive),
        "product" => product_action_sieve(k).map(SieveReport::Product),
        "diagonal" => {
            let table = match table {
                None => Ok(builtin_simple_group_table().to_vec()),
                Some(path) => std::fs::read_to_string(path)
                    .map_err(Error::from)
                    .and_then(|text| parse_simple_group_table(&text)),
            };
            table.and_then(|t| diagonal_sieve(k, &t).map(SieveReport::Diagonal))
        }
        "twisted" => twisted_wreath_sieve(k).map(SieveReport::TwistedWreath),
        other => {
            return CommandResult::usage(format!(
                "error: unknown sieve kind {:?} (expected imprimitive|product|diagonal|twisted)",
                other
            ))
        }
    };
    match report {
        Ok(report) => CommandResult::ok(report.render()),
        Err(err) => usage_from(err),
    }
}

// ---------------------------------------------------------------------------
// group info
// ---------------------------------------------------------------------------

pub fn cmd_group_info(source: &str) -> CommandResult {
    let (name, group) = match load_group(source) {
        Ok(x) => x,
        Err(err) => return usage_from(err),
    };
    let mut out = String::new();
    writeln!(out, "group: {}", name).unwrap();
    writeln!(out, "degree: {}", group.degree()).unwrap();
    if !group.is_transitive() {
        writeln!(out, "order={}", group.order()).unwrap();
        writeln!(out, "intransitive").unwrap();
        return CommandResult::negative(out);
    }
    let profile = group.subdegrees(1).expect("transitive");
    let systems = group.block_systems().expect("transitive");
    let systems_text = if systems.is_empty() {
        "none".to_string()
    } else {
        let mut counted: Vec<((usize, usize), usize)> = Vec::new();
        for s in &systems {
            let key = (s.class_size(), s.class_count());
            match counted.iter_mut().find(|(k, _)| *k == key) {
                Some((_, n)) => *n += 1,
                None => counted.push((key, 1)),
            }
        }
        counted
            .iter()
            .map(|((c, d), n)| {
                if *n == 1 {
                    format!("({},{})", c, d)
                } else {
                    format!("({},{})x{}", c, d, n)
                }
            })
            .join(",")
    };
    writeln!(
        out,
        "order={} subdegrees={} rank={} systems={}",
        group.order(),
        profile,
        profile.rank(),
        systems_text
    )
    .unwrap();
    if systems.is_empty() {
        writeln!(out, "primitive; no systems").unwrap();
    }
    CommandResult::ok(out)
}

// ---------------------------------------------------------------------------
// design orbit / verify
// ---------------------------------------------------------------------------

fn describe_failure(out: &mut String, failure: &Verification) {
    if let Verification::NotDesign {
        t,
        low_subset,
        low_count,
        high_subset,
        high_count,
    } = failure
    {
        writeln!(
            out,
            "not a {}-design: {{{}}} lies in {} blocks but {{{}}} lies in {} blocks",
            t,
            low_subset.iter().join(","),
            low_count,
            high_subset.iter().join(","),
            high_count
        )
        .unwrap();
    }
}

fn describe_params(out: &mut String, p: &DesignParams) {
    writeln!(out, "b={} lambda={} r={}", p.b, p.lambda, p.r).unwrap();
    writeln!(
        out,
        "{}{}",
        p,
        if p.is_nontrivial() {
            " nontrivial"
        } else {
            " trivial"
        }
    )
    .unwrap();
}

pub fn cmd_design_orbit(
    source: &str,
    base: &[usize],
    t: usize,
    out_path: Option<&Path>,
) -> CommandResult {
    let (name, group) = match load_group(source) {
        Ok(x) => x,
        Err(err) => return usage_from(err),
    };
    let design = match block_orbit(&group, base) {
        Ok(d) => d,
        Err(err) => return usage_from(err),
    };
    let mut out = String::new();
    writeln!(out, "group: {}", name).unwrap();
    writeln!(out, "base block: {}", base.iter().join(" ")).unwrap();
    writeln!(out, "orbit size: {}", design.num_blocks()).unwrap();
    let verification = match design.verify(t) {
        Ok(v) => v,
        Err(err) => return usage_from(err),
    };
    if let Some(path) = out_path {
        if let Err(err) = std::fs::write(path, design.to_text()) {
            return usage_from(err.into());
        }
        writeln!(out, "written: {}", path.display()).unwrap();
    }
    match verification {
        Verification::Design(p) => {
            describe_params(&mut out, &p);
            CommandResult::ok(out)
        }
        failure => {
            describe_failure(&mut out, &failure);
            CommandResult::negative(out)
        }
    }
}

pub fn cmd_design_verify(path: &Path, t: usize) -> CommandResult {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(err) => return usage_from(err.into()),
    };
    let design = match Design::parse(&text) {
        Ok(d) => d,
        Err(err) => return usage_from(err),
    };
    let mut out = String::new();
    writeln!(out, "file: {}", path.display()).unwrap();
    writeln!(
        out,
        "v={} k={} b={}",
        design.v(),
        design.k(),
        design.num_blocks()
    )
    .unwrap();
    match design.verify(t) {
        Ok(Verification::Design(p)) => {
            writeln!(out, "{}", p).unwrap();
            writeln!(
                out,
                "b={} r={}{}",
                p.b,
                p.r,
                if p.is_nontrivial() {
                    " nontrivial"
                } else {
                    " trivial"
                }
            )
            .unwrap();
            CommandResult::ok(out)
        }
        Ok(failure) => {
            describe_failure(&mut out, &failure);
            CommandResult::negative(out)
        }
        Err(err) => usage_from(err),
    }
}

// ---------------------------------------------------------------------------
// design search
// ---------------------------------------------------------------------------

/// A block orbit with the 3-design property found by the pattern search.
pub struct SearchHit {
    pub representative: Vec<usize>,
    pub design: Design,
    pub params: DesignParams,
}

pub struct SearchOutcome {
    /// (class size, class count) of each system the pattern was matched
    /// against.
    pub systems: Vec<(usize, usize)>,
    pub orbits_tested: usize,
    pub hits: Vec<SearchHit>,
}

/// Enumerates the orbits of k-subsets whose intersection pattern with some
/// block system of `g` equals `pattern`, tests each orbit for the 3-design
/// property, and returns the orbits that verify. Orbit representatives are
/// the lexicographically least subsets, scanned in order.
pub fn pattern_orbit_search(g: &PermGroup, pattern: &IntersectionPattern) -> Result<SearchOutcome> {
    let v = g.degree();
    if v > crate::design::MAX_POINTS {
        return Err(Error::InvalidArgument(format!(
            "degree {} exceeds {}",
            v,
            crate::design::MAX_POINTS
        )));
    }
    let k = pattern.block_size() as usize;
    if k > v {
        return Err(Error::InvalidArgument(format!(
            "pattern {} does not fit degree {}",
            pattern, v
        )));
    }
    let all_systems = g.block_systems()?;
    let systems: Vec<_> = all_systems
        .iter()
        .filter(|s| {
            s.class_size() as u64 >= pattern.max_part()
                && s.class_count() as u64 >= pattern.num_parts()
        })
        .collect();

    let mut seen: HashSet<u64> = HashSet::new();
    let mut orbits_tested = 0usize;
    let mut hits = Vec::new();
    for system in &systems {
        let class_masks = system.class_masks();
        for subset in (1..=v).combinations(k) {
            let mask = mask_from_points(&subset, v)?;
            if seen.contains(&mask) {
                continue;
            }
            let mut sizes: Vec<u64> = class_masks
                .iter()
                .map(|&m| (m & mask).count_ones() as u64)
                .filter(|&c| c > 0)
                .collect();
            sizes.sort_unstable_by(|a, b| b.cmp(a));
            if sizes != pattern.parts() {
                continue;
            }
            // close the orbit; every member keeps the pattern since the
            // group permutes the classes
            let mut orbit = vec![mask];
            seen.insert(mask);
            let mut head = 0;
            while head < orbit.len() {
                let m = orbit[head];
                head += 1;
                for gen in g.generators() {
                    let image = gen.apply_mask(m);
                    if seen.insert(image) {
                        orbit.push(image);
                    }
                }
            }
            orbits_tested += 1;
            let design = Design::from_masks(v, k, orbit)?;
            if let Verification::Design(params) = design.verify(3)? {
                hits.push(SearchHit {
                    representative: subset,
                    design,
                    params,
                });
            }
        }
    }
    Ok(SearchOutcome {
        systems: systems
            .iter()
            .map(|s| (s.class_size(), s.class_count()))
            .collect(),
        orbits_tested,
        hits,
    })
}

fn sanitize(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect()
}

/// Where `design search` takes its groups from.
pub enum SearchSource {
    Group(String),
    CatalogBuiltin,
    CatalogFile(PathBuf),
}

pub fn cmd_design_search(
    source: &SearchSource,
    pattern_parts: &[u64],
    emit_dir: Option<&Path>,
) -> CommandResult {
    let pattern = match IntersectionPattern::new(pattern_parts) {
        Ok(p) => p,
        Err(err) => return usage_from(err),
    };
    let mut out = String::new();

    let groups: Vec<(String, PermGroup)> = match source {
        SearchSource::Group(spec) => match load_group(spec) {
            Ok(x) => vec![x],
            Err(err) => return usage_from(err),
        },
        SearchSource::CatalogBuiltin | SearchSource::CatalogFile(_) => {
            let catalog: Catalog = match source {
                SearchSource::CatalogFile(path) => {
                    let text = match std::fs::read_to_string(path) {
                        Ok(t) => t,
                        Err(err) => return usage_from(err.into()),
                    };
                    match parse_catalog(&text) {
                        Ok(c) => c,
                        Err(err) => return usage_from(err),
                    }
                }
                _ => builtin_fixtures(),
            };
            let total = catalog.records.len();
            let groups: Vec<(String, PermGroup)> = catalog
                .records
                .iter()
                .map(|r| (r.name.clone(), r.group()))
                .filter(|(_, g)| {
                    g.is_transitive() && !g.block_systems().expect("transitive").is_empty()
                })
                .collect();
            writeln!(
                out,
                "catalog: {} records, {} transitive imprimitive used",
                total,
                groups.len()
            )
            .unwrap();
            groups
        }
    };

    if let Some(dir) = emit_dir {
        if let Err(err) = std::fs::create_dir_all(dir) {
            return usage_from(err.into());
        }
    }

    let mut lambdas: Vec<u64> = Vec::new();
    for (name, group) in &groups {
        let outcome = match pattern_orbit_search(group, &pattern) {
            Ok(o) => o,
            Err(err) => return usage_from(err),
        };
        let systems = if outcome.systems.is_empty() {
            "none".to_string()
        } else {
            let mut counted: Vec<((usize, usize), usize)> = Vec::new();
            for &key in &outcome.systems {
                match counted.iter_mut().find(|(k, _)| *k == key) {
                    Some((_, n)) => *n += 1,
                    None => counted.push((key, 1)),
                }
            }
            counted
                .iter()
                .map(|((c, d), n)| {
                    if *n == 1 {
                        format!("({},{})", c, d)
                    } else {
                        format!("({},{})x{}", c, d, n)
                    }
                })
                .join(",")
        };
        writeln!(
            out,
            "group {}: systems={} orbits={} designs={}",
            name,
            systems,
            outcome.orbits_tested,
            outcome.hits.len()
        )
        .unwrap();
        for hit in &outcome.hits {
            writeln!(
                out,
                "  rep {}: b={} lambda={} r={}",
                hit.representative.iter().join(","),
                hit.params.b,
                hit.params.lambda,
                hit.params.r
            )
            .unwrap();
            lambdas.push(hit.params.lambda);
            if let Some(dir) = emit_dir {
                let file = dir.join(format!(
                    "{}__{}.txt",
                    sanitize(name),
                    hit.representative.iter().join("-")
                ));
                if let Err(err) = std::fs::write(&file, hit.design.to_text()) {
                    return usage_from(err.into());
                }
            }
        }
    }
    lambdas.sort_unstable();
    lambdas.dedup();
    if lambdas.is_empty() {
        writeln!(out, "lambda values: none").unwrap();
        CommandResult::negative(out)
    } else {
        writeln!(out, "lambda values: {}", lambdas.iter().join(" ")).unwrap();
        CommandResult::ok(out)
    }
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

pub fn cmd_classify(paths: &[PathBuf]) -> CommandResult {
    let mut files: Vec<PathBuf> = Vec::new();
    for path in paths {
        if path.is_dir() {
            let mut entries: Vec<PathBuf> = match std::fs::read_dir(path) {
                Ok(read) => read
                    .filter_map(|e| e.ok())
                    .map(|e| e.path())
                    .filter(|p| p.is_file())
                    .collect(),
                Err(err) => return usage_from(err.into()),
            };
            entries.sort();
            files.extend(entries);
        } else {
            files.push(path.clone());
        }
    }
    if files.is_empty() {
        return CommandResult::usage("error: no design files given");
    }

    let mut designs = Vec::new();
    let mut names = Vec::new();
    for file in &files {
        let text = match std::fs::read_to_string(file) {
            Ok(t) => t,
            Err(err) => return usage_from(err.into()),
        };
        match Design::parse(&text) {
            Ok(d) => {
                designs.push(d);
                names.push(
                    file.file_name()
                        .map(|n| n.to_string_lossy().into_owned())
                        .unwrap_or_else(|| file.display().to_string()),
                );
            }
            Err(err) => {
                return CommandResult::usage(format!("error in {}: {}", file.display(), err))
            }
        }
    }

    let classes = match crate::classify::iso_classes(&designs) {
        Ok(c) => c,
        Err(err) => return usage_from(err),
    };

    // lambda of each class via its first member
    let mut rows: Vec<(Option<u64>, Vec<usize>)> = classes
        .into_iter()
        .map(|class| {
            let lambda = designs[class[0]]
                .verify(3)
                .ok()
                .and_then(|v| v.params())
                .map(|p| p.lambda);
            (lambda, class)
        })
        .collect();
    rows.sort_by(|a, b| {
        let key = |r: &(Option<u64>, Vec<usize>)| (r.0.is_none(), r.0, names[r.1[0]].clone());
        key(a).cmp(&key(b))
    });

    let mut out = String::new();
    writeln!(out, "designs: {}", designs.len()).unwrap();
    writeln!(out, "classes: {}", rows.len()).unwrap();

    // per-lambda class counts, two aligned rows
    let mut lambda_counts: Vec<(String, usize)> = Vec::new();
    for (lambda, _) in &rows {
        let label = lambda.map_or("-".to_string(), |l| l.to_string());
        match lambda_counts.iter_mut().find(|(k, _)| *k == label) {
            Some((_, n)) => *n += 1,
            None => lambda_counts.push((label, 1)),
        }
    }
    let mut header = String::from("lambda ");
    let mut counts = String::from("n      ");
    for (label, n) in &lambda_counts {
        let width = label.len().max(n.to_string().len());
        write!(header, " {:>width$}", label, width = width).unwrap();
        write!(counts, " {:>width$}", n, width = width).unwrap();
    }
    writeln!(out, "{}", header).unwrap();
    writeln!(out, "{}", counts).unwrap();

    for (i, (_, class)) in rows.iter().enumerate() {
        let mut members: Vec<&str> = class.iter().map(|&idx| names[idx].as_str()).collect();
        members.sort_unstable();
        writeln!(out, "class {}: {}", i + 1, members.join(" ")).unwrap();
    }
    CommandResult::ok(out)
}
