//! Parameter sweeps: every family, every field up to the configured bounds,
//! every (or a sampled set of) valid `a`, plus the symbolic runs.

use rayon::prelude::*;
use serde::Serialize;

use super::registry::{registry, Entry};
use super::run::{run_symbolic, SYMBOLIC_PRIMES};
use super::{rejected, structural_check, CheckReport, Status, STRUCTURAL_CHECKS};
use crate::arith::prime_power;
use crate::generators::{build_pair, valid_a_values, Family};

/// Largest field order a sweep may visit.
pub const MAX_ORDER: u64 = 1 << 20;

/// Seeded linear congruential generator: `s <- s * 6364136223846793005 +
/// 1442695040888963407 (mod 2^64)`, output the top 31 bits.
#[derive(Clone, Debug)]
pub struct Lcg(u64);

impl Lcg {
    pub const MUL: u64 = 6364136223846793005;
    pub const INC: u64 = 1442695040888963407;

    pub fn new(seed: u64) -> Self {
        Lcg(seed)
    }

    pub fn next_u32(&mut self) -> u32 {
        self.0 = self.0.wrapping_mul(Self::MUL).wrapping_add(Self::INC);
        (self.0 >> 33) as u32
    }

    /// Index in `0..n`, by remainder.
    pub fn below(&mut self, n: usize) -> usize {
        self.next_u32() as usize % n
    }

    /// `k` distinct items of `items` chosen by a partial Fisher-Yates
    /// shuffle, returned in their original order.
    pub fn sample<T: Clone + Ord>(&mut self, items: &[T], k: usize) -> Vec<T> {
        let mut pool = items.to_vec();
        let k = k.min(pool.len());
        for i in 0..k {
            let j = i + self.below(pool.len() - i);
            pool.swap(i, j);
        }
        let mut out = pool[..k].to_vec();
        out.sort();
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum APolicy {
    Exhaustive,
    Sample { n: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepConfig {
    pub families: Vec<Family>,
    pub q_even_max: u64,
    pub q_odd_max: u64,
    pub a_policy: APolicy,
    /// Glob over check ids.
    pub checks: String,
    /// Extra pseudorandom (q, a) instances with q above the bounds.
    pub beyond: usize,
    pub seed: Option<u64>,
    pub symbolic: bool,
    #[serde(skip)]
    pub jobs: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            families: Family::ALL.to_vec(),
            q_even_max: 64,
            q_odd_max: 49,
            a_policy: APolicy::Exhaustive,
            checks: "*".into(),
            beyond: 0,
            seed: None,
            symbolic: true,
            jobs: 0,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.q_even_max > MAX_ORDER || self.q_odd_max > MAX_ORDER {
            return Err(format!("field bounds must not exceed {MAX_ORDER}"));
        }
        if self.beyond > 0 && self.seed.is_none() {
            return Err("a seed is required for pseudorandom instances".into());
        }
        glob::Pattern::new(&self.checks).map_err(|e| format!("bad check filter: {e}"))?;
        Ok(())
    }

    fn matcher(&self) -> glob::Pattern {
        glob::Pattern::new(&self.checks).expect("validated pattern")
    }
}

/// Prime powers `q` with `lo < q <= hi` of the given parity.
pub fn field_orders(lo: u64, hi: u64, even: bool) -> Vec<u64> {
    (lo + 1..=hi).filter(|&q| q >= 2 && (q % 2 == 0) == even && prime_power(q).is_some()).collect()
}

#[derive(Clone, Debug)]
enum Task {
    Instance { family: Family, q: u64, a: Option<u64>, field_scope: bool },
    Symbolic { entry: usize, family: Family, p: u64 },
}

fn a_values(family: Family, q: u64, policy: APolicy) -> Vec<Option<u64>> {
    if !family.uses_a() {
        return vec![None];
    }
    let all = valid_a_values(family, q, None).unwrap_or_default();
    let chosen = match policy {
        APolicy::Exhaustive => all,
        APolicy::Sample { n, seed } => Lcg::new(seed ^ (q << 8) ^ family as u64).sample(&all, n),
    };
    chosen.into_iter().map(Some).collect()
}

fn char_of(family: Family) -> impl Fn(u64) -> bool {
    move |p| match family {
        Family::PlusEven | Family::MinusEven => p == 2,
        Family::Minus2 => false,
        Family::PlusOdd | Family::MinusOdd => p != 2,
    }
}

fn tasks(cfg: &SweepConfig) -> Vec<Task> {
    let mut out = Vec::new();
    let mut qs: Vec<u64> = field_orders(1, cfg.q_even_max, true);
    qs.extend(field_orders(1, cfg.q_odd_max, false));
    for &family in &cfg.families {
        for &q in &qs {
            if !family.applies_to(q) {
                continue;
            }
            for (k, a) in a_values(family, q, cfg.a_policy).into_iter().enumerate() {
                out.push(Task::Instance { family, q, a, field_scope: k == 0 });
            }
        }
    }
    if cfg.beyond > 0 {
        let mut rng = Lcg::new(cfg.seed.expect("validated"));
        let mut far = field_orders(cfg.q_even_max, (4 * cfg.q_even_max).min(MAX_ORDER), true);
        far.extend(field_orders(cfg.q_odd_max, (4 * cfg.q_odd_max).min(MAX_ORDER), false));
        let mut drawn = 0;
        let mut tries = 0;
        while drawn < cfg.beyond && !far.is_empty() && tries < 100 * cfg.beyond {
            tries += 1;
            let q = far[rng.below(far.len())];
            let fams: Vec<Family> = cfg.families.iter().copied().filter(|f| f.applies_to(q) && f.uses_a()).collect();
            if fams.is_empty() {
                continue;
            }
            let family = fams[rng.below(fams.len())];
            let valid = valid_a_values(family, q, None).unwrap_or_default();
            if valid.is_empty() {
                continue;
            }
            let a = valid[rng.below(valid.len())];
            out.push(Task::Instance { family, q, a: Some(a), field_scope: false });
            drawn += 1;
        }
    }
    if cfg.symbolic {
        let pat = cfg.matcher();
        for (i, e) in registry().iter().enumerate() {
            if !e.runs_symbolic() || !pat.matches(&e.id) {
                continue;
            }
            for &family in &cfg.families {
                for p in SYMBOLIC_PRIMES {
                    if char_of(family)(p) && e.applies(family, p) {
                        out.push(Task::Symbolic { entry: i, family, p });
                    }
                }
            }
        }
    }
    out
}

fn run_task(task: &Task, pat: &glob::Pattern) -> Vec<CheckReport> {
    match *task {
        Task::Symbolic { entry, family, p } => vec![run_symbolic(&registry()[entry], family, p)],
        Task::Instance { family, q, a, field_scope } => {
            let pair = match build_pair(family, q, a, None) {
                Ok(p) => p,
                Err(e) => return vec![rejected(family, q, a, None, e.to_string())],
            };
            let mut out: Vec<CheckReport> =
                STRUCTURAL_CHECKS.iter().filter(|id| pat.matches(id)).filter_map(|id| structural_check(id, &pair)).collect();
            let p = pair.field.p();
            let entries = registry().iter().filter(|e: &&Entry| {
                e.applies(family, p) && e.runs_point() && (field_scope || !e.per_field) && pat.matches(&e.id)
            });
            out.extend(entries.filter_map(|e| super::run::run_point(e, family, &pair.field, pair.a, pair.xi)));
            out
        }
    }
}

/// Runs the sweep on `jobs` workers (0 picks the default) and returns the
/// reports sorted by check id and parameters.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<CheckReport>, String> {
    cfg.validate()?;
    let pat = cfg.matcher();
    let tasks = tasks(cfg);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build().map_err(|e| e.to_string())?;
    let mut out: Vec<CheckReport> = pool.install(|| tasks.par_iter().flat_map_iter(|t| run_task(t, &pat)).collect());
    out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Ok(out)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub rejected: usize,
}

impl Summary {
    pub fn of(reports: &[CheckReport]) -> Self {
        let mut s = Summary::default();
        for r in reports {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Skipped => s.skipped += 1,
                Status::Rejected => s.rejected += 1,
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lcg_is_fixed() {
        let mut r = Lcg::new(1);
        let v: Vec<u32> = (0..3).map(|_| r.next_u32()).collect();
        let mut s: u64 = 1;
        let expect: Vec<u32> = (0..3)
            .map(|_| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (s >> 33) as u32
            })
            .collect();
        assert_eq!(v, expect);
        let picked = Lcg::new(7).sample(&[1, 2, 3, 4, 5, 6], 3);
        assert_eq!(picked.len(), 3);
        assert!(picked.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn field_orders_by_parity() {
        assert_eq!(field_orders(1, 16, true), vec![2, 4, 8, 16]);
        assert_eq!(field_orders(1, 13, false), vec![3, 5, 7, 9, 11, 13]);
    }
}
