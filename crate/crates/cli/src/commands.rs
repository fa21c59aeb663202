//! The subcommands, as functions returning an exit code and their output.

use std::fmt::Write;
use std::time::Instant;

use cartan_core::cohomology::{h_dim, BlockStatus, CohomologyOptions, CohomologyReport};
use cartan_core::deform::verify_theorem;
use cartan_core::families::{build, Family, FamilySpec};
use cartan_core::grading::grading_violation;
use cartan_core::pmap::verify_p_axioms;
use cartan_core::simple::{check_ideal, is_simple, Simplicity};
use cartan_core::{Error, LieAlgebra};

use crate::io::AlgebraFile;
use crate::table::{ResultTable, Row};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

pub const DEFAULT_SEED: u64 = 20240521;

/// Rows checked by `sweep` when no grid file is given.
pub const DEFAULT_GRID: &str = "\
W 1 5
W 1 7
W 2 5
H 2 5
K 3 5
M 2 5
S 3 5
sl 2 5
sl 2 7
";

pub const SUPPORTED_GRID: &str = "W n=1..3, S n=3, H n=2,4, K n=3 (and n=5 at p=5), M (p=5), sl/psl n<=5; p in {5, 7}";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_PASS,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, msg: impl Into<String>) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: msg.into(),
        }
    }
}

pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::InvalidParameters(_) | Error::NotPrime(_) | Error::UnsupportedDegree(_) => EXIT_USAGE,
        Error::BudgetExceeded(_) => EXIT_BUDGET,
        _ => EXIT_MISMATCH,
    }
}

fn from_error(e: Error) -> Outcome {
    Outcome::fail(exit_code_for(&e), format!("error: {e}"))
}

/// A validated spec inside the supported grid.
pub fn supported_spec(family: Family, n: Option<usize>, p: u32) -> Result<FamilySpec, Outcome> {
    let n = match (family, n) {
        (Family::M, _) => 2,
        (_, Some(n)) => n,
        (_, None) => return Err(Outcome::fail(EXIT_USAGE, format!("--n is required for family {family}"))),
    };
    let spec = FamilySpec::new(family, n, p);
    if let Err(e) = spec.validate() {
        return Err(Outcome::fail(EXIT_USAGE, format!("error: {e}\nsupported grid: {SUPPORTED_GRID}")));
    }
    if !spec.in_supported_grid() {
        return Err(Outcome::fail(
            EXIT_USAGE,
            format!("error: {spec} is outside the supported grid\nsupported grid: {SUPPORTED_GRID}"),
        ));
    }
    Ok(spec)
}

pub fn load(path: &str) -> Result<LieAlgebra, Outcome> {
    let text = std::fs::read_to_string(path).map_err(|e| Outcome::fail(EXIT_USAGE, format!("error: cannot read {path}: {e}")))?;
    AlgebraFile::parse(&text)
        .and_then(|f| f.to_algebra())
        .map_err(|e| Outcome::fail(EXIT_USAGE, format!("error: {path}: {e}")))
}

pub fn cmd_construct(spec: FamilySpec, out: Option<&str>) -> Outcome {
    let l = match build(spec) {
        Ok(l) => l,
        Err(e) => return from_error(e),
    };
    let file = AlgebraFile::from_algebra(&l).render();
    let range = l
        .grading()
        .map_or_else(|| "none".to_string(), |g| format!("[{}, {}]", g.min_weight(), g.max_weight()));
    let summary = format!("{}: dim {}, grading {}\n", spec, l.dim(), range);
    match out {
        Some(path) => match std::fs::write(path, file) {
            Ok(()) => Outcome::ok(summary),
            Err(e) => Outcome::fail(EXIT_USAGE, format!("error: cannot write {path}: {e}")),
        },
        None => Outcome {
            code: EXIT_PASS,
            stdout: file,
            stderr: summary,
        },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Jacobi,
    Grading,
    PMap,
    Simple,
}

impl std::str::FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "jacobi" => Ok(Check::Jacobi),
            "grading" => Ok(Check::Grading),
            "pmap" => Ok(Check::PMap),
            "simple" => Ok(Check::Simple),
            other => Err(format!("unknown check '{other}' (jacobi, grading, pmap, simple)")),
        }
    }
}

pub const ALL_CHECKS: [Check; 4] = [Check::Jacobi, Check::Grading, Check::PMap, Check::Simple];

/// Run the selected suites; one `check<TAB>status<TAB>detail` line each.
pub fn cmd_verify(l: &LieAlgebra, checks: &[Check], seed: u64) -> Outcome {
    let mut out = String::new();
    let mut failed = false;
    let label3 = |(i, j, k): (usize, usize, usize)| format!("({}, {}, {})", l.label(i), l.label(j), l.label(k));
    for c in checks {
        let (name, status, detail) = match c {
            Check::Jacobi => {
                let (w, how) = if l.dim() <= 130 {
                    (l.jacobi_witness_exhaustive(), "all basis triples".to_string())
                } else {
                    (l.jacobi_witness_random(100_000, seed), "100000 random basis triples".to_string())
                };
                match w {
                    None => ("jacobi", "pass", how),
                    Some(t) => ("jacobi", "fail", format!("nonzero defect on {}", label3(t))),
                }
            }
            Check::Grading => match l.grading() {
                None => ("grading", "absent", "no grading present".to_string()),
                Some(g) => match grading_violation(l, &g.weights) {
                    None => ("grading", "pass", format!("weights in [{}, {}]", g.min_weight(), g.max_weight())),
                    Some((i, j, k)) => (
                        "grading",
                        "fail",
                        format!("[{}, {}] has a {} term", l.label(i), l.label(j), l.label(k)),
                    ),
                },
            },
            Check::PMap => match l.p_map() {
                None => ("pmap", "absent", "no p-map present".to_string()),
                Some(t) => match verify_p_axioms(l, t, 100, seed) {
                    Err(e) => ("pmap", "fail", e.to_string()),
                    Ok(r) if r.passed() => (
                        "pmap",
                        "pass",
                        format!(
                            "axiom1 {} basis, axiom2 {} samples, axiom3 {} samples, s_i cross-check {}",
                            r.axiom1.checked, r.axiom2.checked, r.axiom3.checked, r.s_crosscheck.checked
                        ),
                    ),
                    Ok(r) => {
                        let w = [&r.axiom1, &r.axiom2, &r.axiom3, &r.s_crosscheck]
                            .iter()
                            .zip(["axiom1", "axiom2", "axiom3", "s_i"])
                            .find_map(|(a, n)| a.witness.as_ref().map(|w| format!("{n}: {w}")))
                            .unwrap_or_default();
                        ("pmap", "fail", w)
                    }
                },
            },
            Check::Simple => match is_simple(l, seed, 20) {
                Simplicity::Simple => ("simple", "pass", "adjoint module irreducible".to_string()),
                Simplicity::Undecided => ("simple", "undecided", "no certificate within budget".to_string()),
                Simplicity::NotSimple(s) => {
                    let ok = check_ideal(l, &s);
                    ("simple", "fail", format!("proper ideal of dim {} (verified {ok})", s.dim()))
                }
            },
        };
        failed |= status == "fail";
        writeln!(out, "{name}\t{status}\t{detail}").unwrap();
    }
    Outcome {
        code: if failed { EXIT_MISMATCH } else { EXIT_PASS },
        stdout: out,
        stderr: String::new(),
    }
}

pub fn render_cohomology(l: &LieAlgebra, r: &CohomologyReport, all_blocks: bool, timing: bool) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "# {} dim {} q {} mode {} lattice_rank {} toral_lanes {}",
        l.name(),
        l.dim(),
        r.q,
        r.mode,
        r.lattice_rank,
        r.toral_lanes
    )
    .unwrap();
    s.push_str("lattice\ttoral\tweight\tstatus\tc1\tc2\trank_d1\trank_d2\th2");
    s.push_str(if timing { "\ttime\n" } else { "\n" });
    for b in &r.blocks {
        if !all_blocks && b.h2 == 0 && b.status == BlockStatus::Computed {
            continue;
        }
        let status = match b.status {
            BlockStatus::Computed => "ok",
            BlockStatus::OverCap => "over-cap",
            BlockStatus::TimedOut => "timed-out",
        };
        write!(
            s,
            "{:?}\t{:?}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            b.lattice,
            b.toral,
            b.weight.map_or_else(|| "-".to_string(), |w| w.to_string()),
            status,
            b.c1,
            b.c2,
            b.rank_d1,
            b.rank_d2,
            b.h2
        )
        .unwrap();
        if timing {
            write!(s, "\t{:.3}", b.elapsed.as_secs_f64()).unwrap();
        }
        s.push('\n');
        for rep in &b.representatives {
            writeln!(s, "  representative nnz {}", rep.nnz()).unwrap();
        }
    }
    writeln!(
        s,
        "blocks {} acyclic {} ({} coordinates)",
        r.blocks.len(),
        r.acyclic_blocks,
        r.acyclic_coords
    )
    .unwrap();
    if r.complete {
        writeln!(s, "H^2 = {}", r.h_dim).unwrap();
    } else {
        writeln!(
            s,
            "H^2 >= {} (incomplete: {} blocks over budget)",
            r.h_dim,
            r.incomplete_blocks().count()
        )
        .unwrap();
    }
    if timing {
        writeln!(s, "elapsed {:.3}s", r.elapsed.as_secs_f64()).unwrap();
    }
    s
}

pub fn cmd_cohomology(l: &LieAlgebra, q: usize, opts: &CohomologyOptions, all_blocks: bool, timing: bool) -> Outcome {
    if q != 2 {
        return Outcome::fail(EXIT_USAGE, format!("error: only q = 2 is supported, got {q}"));
    }
    match h_dim(l, q, opts) {
        Err(e) => from_error(e),
        Ok(r) => Outcome {
            code: if r.complete { EXIT_PASS } else { EXIT_BUDGET },
            stdout: render_cohomology(l, &r, all_blocks, timing),
            stderr: String::new(),
        },
    }
}

fn theorem_row(spec: FamilySpec, opts: &CohomologyOptions) -> Row {
    let t = Instant::now();
    match verify_theorem(spec, opts) {
        Ok(r) => Row::from_report(&r, t.elapsed()),
        Err(e) => Row::error(spec, e.to_string()),
    }
}

fn table_code(t: &ResultTable) -> i32 {
    if t.all_match() {
        EXIT_PASS
    } else {
        EXIT_MISMATCH
    }
}

pub fn cmd_theorem(spec: FamilySpec, opts: &CohomologyOptions, timing: bool) -> (ResultTable, Outcome) {
    let mut t = ResultTable::default();
    t.push(theorem_row(spec, opts));
    let out = Outcome {
        code: table_code(&t),
        stdout: t.render(timing),
        stderr: String::new(),
    };
    (t, out)
}

/// One grid row: `family n p`, where `M` may omit `n`. `#` starts a comment.
pub fn parse_grid(text: &str) -> Vec<Result<FamilySpec, String>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|line| {
            let f: Vec<&str> = line.split_whitespace().collect();
            let family: Family = f[0].parse().map_err(|e: Error| format!("{line}: {e}"))?;
            let nums: Vec<&str> = f[1..].to_vec();
            let (n, p) = match (family, nums.as_slice()) {
                (Family::M, [p]) => ("2", *p),
                (_, [n, p]) => (*n, *p),
                _ => return Err(format!("{line}: expected 'family n p'")),
            };
            let n = if n == "-" { 2 } else { n.parse().map_err(|_| format!("{line}: bad n"))? };
            let p = p.parse().map_err(|_| format!("{line}: bad p"))?;
            Ok(FamilySpec::new(family, n, p))
        })
        .collect()
}

/// Run every grid row in order; failures become error rows.
pub fn cmd_sweep(grid: &str, opts: &CohomologyOptions, timing: bool) -> (ResultTable, Outcome) {
    let mut t = ResultTable::default();
    for entry in parse_grid(grid) {
        match entry {
            Err(msg) => t.push(Row::error(FamilySpec::new(Family::W, 0, 0), msg)),
            Ok(spec) if !spec.in_supported_grid() => t.push(Row::error(spec, "outside the supported grid")),
            Ok(spec) => t.push(theorem_row(spec, opts)),
        }
    }
    let mut stdout = t.render(timing);
    if timing {
        writeln!(stdout, "# total wall time {:.3}s", t.total_time().as_secs_f64()).unwrap();
    }
    let out = Outcome {
        code: table_code(&t),
        stdout,
        stderr: String::new(),
    };
    (t, out)
}
