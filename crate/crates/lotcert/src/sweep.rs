//! Property sweeps over generated LOTs with reproducible text reports.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::thread;

use lotcert_core::certify::{certify, check_certificate, find_reorientation};
use lotcert_core::sublot::{enumerate_sublots, maximal_proper_sublots};
use lotcert_core::transform::reorient_lot;
use lotcert_core::whitehead::{relative_stallings_test, stallings_test};
use lotcert_core::{Lot, Presentation, SubLot};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gen;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepConfig {
    /// Exhaustive over all injective LOTs with at most this many vertices.
    pub max_vertices: usize,
    pub random: usize,
    pub random_max_vertices: usize,
    pub seed: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { max_vertices: 5, random: 1000, random_max_vertices: 12, seed: 0 }
    }
}

/// Exhaustive instances first, then the seeded random ones.
pub fn instances(cfg: &SweepConfig) -> Vec<(&'static str, Lot)> {
    let mut out = Vec::new();
    for n in 1..=cfg.max_vertices {
        out.extend(gen::injective_lots(n).into_iter().map(|t| ("exhaustive", t)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.random {
        let n = rng.gen_range(1..=cfg.random_max_vertices.max(1));
        out.push(("random", gen::random_injective_lot(&mut rng, n)));
    }
    out
}

pub fn describe(t: &Lot) -> String {
    let parts: Vec<String> = (0..t.edge_count())
        .map(|id| {
            let [f, l, r] = t.edge_names(id);
            format!("[{f},{l},{r}]")
        })
        .collect();
    if parts.is_empty() {
        t.name(0).to_string()
    } else {
        parts.join(" ")
    }
}

/// Runs `f` over `items` on all cores; results keep the input order.
pub fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(items.len().max(1));
    let chunk = items.len().div_ceil(workers).max(1);
    thread::scope(|s| {
        let handles: Vec<_> = items.chunks(chunk).map(|c| s.spawn(|| c.iter().map(&f).collect::<Vec<R>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("sweep worker panicked")).collect()
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub source: &'static str,
    pub lot: String,
    /// `Ok(tag)` counts under `tag`; `Err` is a failure message.
    pub result: Result<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub cfg: SweepConfig,
    pub outcomes: Vec<Outcome>,
    /// Instances filtered out before testing.
    pub skipped: usize,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = (usize, &Outcome)> {
        self.outcomes.iter().enumerate().filter(|(_, o)| o.result.is_err())
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn count(&self, source: &str) -> usize {
        self.outcomes.iter().filter(|o| o.source == source).count()
    }

    pub fn render(&self) -> String {
        let c = &self.cfg;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "sweep {} max-vertices={} random={} random-max-vertices={} seed={}",
            self.title, c.max_vertices, c.random, c.random_max_vertices, c.seed
        );
        let mut tally: BTreeMap<(&str, &str), usize> = BTreeMap::new();
        for o in &self.outcomes {
            let tag = match &o.result {
                Ok(t) => t.as_str(),
                Err(_) => "FAILED",
            };
            *tally.entry((o.source, tag)).or_default() += 1;
        }
        for source in ["exhaustive", "random"] {
            let n = self.count(source);
            let mut line = format!("{source}: {n} instances");
            for ((s, tag), k) in &tally {
                if *s == source {
                    let _ = write!(line, ", {tag}={k}");
                }
            }
            let _ = writeln!(out, "{line}");
        }
        if self.skipped > 0 {
            let _ = writeln!(out, "filtered out: {}", self.skipped);
        }
        let failures: Vec<_> = self.failures().collect();
        let _ = writeln!(out, "failures: {}", failures.len());
        for (i, o) in failures {
            let _ = writeln!(out, "  #{i} {} {}: {}", o.source, o.lot, o.result.as_ref().unwrap_err());
        }
        let _ = writeln!(out, "{}", if self.passed() { "PASS" } else { "FAIL" });
        out
    }
}

/// Every injective LOT certifies and its certificate checks.
pub fn certify_sweep(cfg: &SweepConfig) -> Report {
    let items = instances(cfg);
    let outcomes = par_map(&items, |(source, t)| Outcome { source, lot: describe(t), result: certify_and_check(t) });
    Report { title: "certify".into(), cfg: *cfg, outcomes, skipped: 0 }
}

fn certify_and_check(t: &Lot) -> Result<String, String> {
    let c = certify(t, &[]).map_err(|e| format!("certify: {e}"))?;
    check_certificate(t, &c).map_err(|e| format!("check: {e}"))?;
    Ok(c.kind().to_string())
}

/// Compressed, injective, reduced, and no sub-LOT (the whole tree included)
/// admits a boundary reduction.
pub fn reorientation_candidate(t: &Lot) -> bool {
    t.is_injective()
        && t.is_compressed()
        && t.predicates().reduced
        && t.edge_count() > 0
        && enumerate_sublots(t).iter().all(|s| s.to_lot(t).is_boundary_reduced())
}

/// Candidates have a reorientation with both one-sided Whitehead graphs
/// trees; when the maximal proper sub-LOTs are disjoint the same holds
/// relative to them.
pub fn reorientation_sweep(cfg: &SweepConfig) -> Report {
    let items = instances(cfg);
    let picked: Vec<_> = items.into_iter().filter(|(_, t)| reorientation_candidate(t)).collect();
    let total = instances_count(cfg);
    let outcomes = par_map(&picked, |(source, t)| Outcome { source, lot: describe(t), result: both_sides(t) });
    Report { title: "reorient".into(), cfg: *cfg, skipped: total - outcomes.len(), outcomes }
}

fn instances_count(cfg: &SweepConfig) -> usize {
    (1..=cfg.max_vertices).map(|n| gen::injective_lots(n).len()).sum::<usize>() + cfg.random
}

fn both_sides(t: &Lot) -> Result<String, String> {
    whole_trees(t, &[]).map_err(|e| format!("plain: {e}"))?;
    let mps = maximal_proper_sublots(t);
    let disjoint = mps.iter().enumerate().all(|(i, a)| mps[i + 1..].iter().all(|b| !a.shares_vertex(b)));
    if mps.is_empty() || !disjoint {
        return Ok("plain".into());
    }
    whole_trees(t, &mps).map_err(|e| format!("relative: {e}"))?;
    Ok("plain+relative".into())
}

fn whole_trees(t: &Lot, ts: &[SubLot]) -> Result<(), String> {
    let r = find_reorientation(t, ts).map_err(|e| e.to_string())?.ok_or("no reorientation found")?;
    let flips: BTreeSet<usize> = r.flips.iter().copied().collect();
    let q = reorient_lot(t, &flips).map_err(|e| e.to_string())?;
    let p = Presentation::of_log(&q);
    let report = if ts.is_empty() {
        stallings_test(&p)
    } else {
        let subs: Vec<_> = ts.iter().map(|s| s.sub_presentation(&q)).collect();
        relative_stallings_test(&p, &subs)
    }
    .map_err(|e| e.to_string())?;
    if report.both_sides_trees() {
        Ok(())
    } else {
        Err(format!("flips {:?} leave a side that is not a tree", r.flips))
    }
}
