//! Verification battery: check reports, the registry of identities, the
//! spin test, prime sets and sweeps over fields and parameters.

pub mod recipe;
pub mod registry;
pub mod run;
pub mod sweep;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::arith::prime_divisors;
use crate::forms::Sign;
use crate::generators::{self, build_pair, eval_table, Family, GeneratorPair};
use crate::gf::{Fe, Field};
use crate::linalg::Matrix;
use crate::ring::Ring;
use crate::steinberg::{eval_word, word_x, word_y, MacroReading};
use registry::{registry, Coverage, Entry};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("unknown check id `{0}`")]
    UnknownCheck(String),
    #[error("check `{0}` does not apply to {1}")]
    NotApplicable(String, String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Rejected,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Params {
    pub family: String,
    /// Field order; the characteristic for symbolic runs.
    pub q: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi: Option<u64>,
    pub mode: String,
    pub tags: Vec<String>,
}

impl Params {
    pub fn point(family: Family, q: u64, a: Option<u64>, xi: Option<u64>, tags: Vec<String>) -> Self {
        Params { family: family.name().into(), q, a, xi, mode: "point".into(), tags }
    }

    pub fn symbolic(family: Family, p: u64, tags: Vec<String>) -> Self {
        Params { family: family.name().into(), q: p, a: None, xi: None, mode: "symbolic".into(), tags }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check_id: String,
    pub params: Params,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub evidence: Vec<String>,
    pub coverage: Coverage,
    /// Wall time; excluded from serialized output so reports are reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CheckReport {
    pub fn skipped(check_id: String, params: Params, reason: String, coverage: Coverage) -> Self {
        CheckReport { check_id, params, status: Status::Skipped, reason: Some(reason), evidence: Vec::new(), coverage, elapsed: Duration::ZERO }
    }

    fn structural(check_id: &str, params: Params, start: Instant, ok: bool, evidence: Vec<String>) -> Self {
        CheckReport {
            check_id: check_id.into(),
            params,
            status: if ok { Status::Pass } else { Status::Fail },
            reason: None,
            evidence,
            coverage: Coverage::Full,
            elapsed: start.elapsed(),
        }
    }

    pub fn sort_key(&self) -> (&str, &Params) {
        (&self.check_id, &self.params)
    }

    /// One-line summary for text output.
    pub fn line(&self) -> String {
        let p = &self.params;
        let mut s = format!("{:<8} {} {} q={}", format!("{:?}", self.status).to_lowercase(), self.check_id, p.family, p.q);
        if let Some(a) = p.a {
            s += &format!(" a={a}");
        }
        if let Some(xi) = p.xi {
            s += &format!(" xi={xi}");
        }
        s += &format!(" [{}]", p.tags.join(","));
        if let Some(r) = &self.reason {
            s += &format!(" ({r})");
        }
        s
    }
}

/// Checks that are computed directly rather than read from the registry.
pub const STRUCTURAL_CHECKS: [&str; 6] =
    ["pair.gate", "pair.sign", "pair.spin", "pair.spin-tau", "steinberg.words", "steinberg.triality"];

/// All check ids: structural ones and the registry.
pub fn all_check_ids() -> Vec<String> {
    let mut ids: BTreeSet<String> = STRUCTURAL_CHECKS.iter().map(|s| s.to_string()).collect();
    ids.extend(registry::check_ids());
    ids.into_iter().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpinResult {
    pub dimension: usize,
    /// Words in `x`, `y` whose matrices form a basis of the span; `I` is the
    /// empty product.
    pub basis_words: Vec<String>,
}

/// Dimension of the algebra spanned by all products of `x` and `y`, closing
/// the span under left multiplication.
pub fn spin_dimension(x: &Matrix<Field>, y: &Matrix<Field>) -> SpinResult {
    let k = &x.ring;
    let n = x.n_rows();
    // Rows in reduced echelon form, each with its pivot.
    let mut rows: Vec<(usize, Vec<Fe>)> = Vec::new();
    let mut words = Vec::new();
    let mut queue = std::collections::VecDeque::from([(String::new(), Matrix::identity(k, n))]);
    while let Some((w, m)) = queue.pop_front() {
        let mut v: Vec<Fe> = m.entries().to_vec();
        for (piv, r) in &rows {
            let c = v[*piv];
            if !k.is_zero(&c) {
                for (vi, ri) in v.iter_mut().zip(r) {
                    *vi = k.sub(vi, &k.mul(&c, ri));
                }
            }
        }
        let Some(piv) = v.iter().position(|c| !k.is_zero(c)) else { continue };
        let inv = k.inv(&v[piv]).expect("nonzero pivot");
        v.iter_mut().for_each(|c| *c = k.mul(c, &inv));
        for (_, r) in rows.iter_mut() {
            let c = r[piv];
            if !k.is_zero(&c) {
                for (ri, vi) in r.iter_mut().zip(&v) {
                    *ri = k.sub(ri, &k.mul(&c, vi));
                }
            }
        }
        rows.push((piv, v));
        let name = if w.is_empty() { "I".to_string() } else { w.clone() };
        words.push(name);
        if rows.len() == n * n {
            break;
        }
        for (g, gname) in [(x, "x"), (y, "y")] {
            let nw = if w.is_empty() { gname.to_string() } else { format!("{gname}*{w}") };
            queue.push_back((nw, g.mul(&m)));
        }
    }
    SpinResult { dimension: rows.len(), basis_words: words }
}

/// Prime divisors of |Omega_8^sign(q)|, read off the order polynomial.
pub fn prime_set_omega(sign: Sign, q: u64) -> Vec<u128> {
    let q = q as u128;
    let mut factors = vec![q, q * q - 1, q.pow(4) - 1, q.pow(6) - 1];
    factors.push(match sign {
        Sign::Plus => q.pow(4) - 1,
        Sign::Minus => q.pow(4) + 1,
    });
    let set: BTreeSet<u128> = factors.into_iter().flat_map(prime_divisors).collect();
    set.into_iter().collect()
}

fn pair_params(pair: &GeneratorPair, tags: &[&str]) -> Params {
    Params::point(pair.family, pair.params.q, pair.params.a, pair.params.xi, tags.iter().map(|t| t.to_string()).collect())
}

/// The report for a parameter set that `build_pair` refuses.
pub fn rejected(family: Family, q: u64, a: Option<u64>, xi: Option<u64>, why: String) -> CheckReport {
    CheckReport {
        check_id: "pair.gate".into(),
        params: Params::point(family, q, a, xi, vec!["point".into()]),
        status: Status::Rejected,
        reason: Some(why),
        evidence: Vec::new(),
        coverage: Coverage::Full,
        elapsed: Duration::ZERO,
    }
}

/// Runs one structural check on a built pair. `None` when it does not apply
/// to the family.
pub fn structural_check(id: &str, pair: &GeneratorPair) -> Option<CheckReport> {
    let start = Instant::now();
    let k = &pair.field;
    let params = pair_params(pair, &["point"]);
    match id {
        "pair.gate" => {
            let r = pair.gate();
            let ev = match &r {
                Ok(()) => vec!["x^2 = I, y^3 = I, det = 1, form preserved, both in Omega".into()],
                Err(e) => vec![e.to_string()],
            };
            Some(CheckReport::structural(id, params, start, r.is_ok(), ev))
        }
        "pair.sign" => {
            let expected = if pair.family.is_plus() { Sign::Plus } else { Sign::Minus };
            let (s1, s2) = (pair.form.sign(), pair.form.sign_by_witt());
            let ok = matches!((&s1, &s2), (Ok(a), Ok(b)) if *a == expected && *b == expected);
            let ev = vec![format!("invariant: {s1:?}, witt: {s2:?}, expected {expected:?}")];
            Some(CheckReport::structural(id, params, start, ok, ev))
        }
        "pair.spin" => {
            let s = spin_dimension(&pair.x, &pair.y);
            Some(CheckReport::structural(id, params, start, s.dimension == 64, vec![format!("dimension {}", s.dimension)]))
        }
        "pair.spin-tau" if pair.family.is_plus() => {
            let [tx, t2x, ty, t2y] = generators::triality_tables(k.p());
            let ev = |t| eval_table(k, t, &pair.a, None).expect("printed image evaluates");
            let d1 = spin_dimension(&ev(tx), &ev(ty)).dimension;
            let d2 = spin_dimension(&ev(t2x), &ev(t2y)).dimension;
            let ok = d1 == 64 && d2 == 64;
            Some(CheckReport::structural(id, params, start, ok, vec![format!("tau: {d1}, tau^2: {d2}")]))
        }
        "steinberg.words" if pair.family.is_plus() => {
            let wx = eval_word(k, &word_x(k.p(), MacroReading::Alpha), &pair.a);
            let wy = eval_word(k, &word_y(), &pair.a);
            let (ok_x, ok_y) = (wx.equals(&pair.x), wy.equals(&pair.y));
            let mut ev = vec![format!("word for x: {}", if ok_x { "matches" } else { "differs" })];
            ev.push(format!("word for y: {}", if ok_y { "matches" } else { "differs" }));
            ev.extend(literal_reading_flag(pair));
            Some(CheckReport::structural(id, params, start, ok_x && ok_y, ev))
        }
        "steinberg.triality" if pair.family.is_plus() => {
            let words = [word_x(k.p(), MacroReading::Alpha), word_y()];
            let mut ok = words.iter().all(|w| w.tau_pow(3) == *w && w.tau().tau().tau() == *w);
            let mut ev = vec![format!("tau^3 is the identity on both words: {ok}")];
            let [tx, t2x, ty, t2y] = generators::triality_tables(k.p());
            for (i, w, t, name) in [(1, &words[0], tx, "tau(x)"), (2, &words[0], t2x, "tau^2(x)"), (1, &words[1], ty, "tau(y)"), (2, &words[1], t2y, "tau^2(y)")] {
                let m = eval_word(k, &w.tau_pow(i), &pair.a);
                let printed = eval_table(k, t, &pair.a, None).expect("printed image evaluates");
                let same = m.equals(&printed);
                ok &= same;
                ev.push(format!("{name}: {}", if same { "matches the printed matrix" } else { "differs from the printed matrix" }));
            }
            ev.extend(literal_reading_flag(pair));
            Some(CheckReport::structural(id, params, start, ok, ev))
        }
        _ => None,
    }
}

/// Evidence line flagging whether the literal reading of `x-14(alpha)`
/// reproduces `x`; includes the entry differences when it does not.
fn literal_reading_flag(pair: &GeneratorPair) -> Option<String> {
    let k = &pair.field;
    let lit = eval_word(k, &word_x(k.p(), MacroReading::Literal), &pair.a);
    if lit.equals(&pair.x) {
        return (k.p() != 2).then(|| "x-14 literal reading: matches".to_string());
    }
    let d = lit.sub(&pair.x);
    let mut diffs = Vec::new();
    for i in 0..8 {
        for j in 0..8 {
            let v = d.get(i, j);
            if !k.is_zero(v) {
                diffs.push(format!("({},{}) {}", i + 1, j + 1, k.render(v)));
            }
        }
    }
    Some(format!("flag x-14 literal reading: word differs from x at {}; the alpha reading is used", diffs.join(", ")))
}

fn field_tag(pair: &GeneratorPair) -> Params {
    pair_params(pair, &["point"])
}

/// Registry entries applicable to the pair's family and characteristic.
fn entries_for(family: Family, p: u64) -> impl Iterator<Item = &'static Entry> {
    registry().iter().filter(move |e| e.applies(family, p))
}

/// Runs every pointwise registry entry, including field-scoped ones, on a
/// built pair.
pub fn registry_point_checks(pair: &GeneratorPair, include_field: bool) -> Vec<CheckReport> {
    entries_for(pair.family, pair.field.p())
        .filter(|e| e.runs_point() && (include_field || !e.per_field))
        .filter_map(|e| run::run_point(e, pair.family, &pair.field, pair.a, pair.xi))
        .collect()
}

/// The premises of the generation theorems for one parameter set: gate,
/// form sign, spin dimension, the words and every applicable registry check.
pub fn generation_evidence(family: Family, q: u64, a: Option<u64>, xi: Option<u64>) -> Vec<CheckReport> {
    let pair = match build_pair(family, q, a, xi) {
        Ok(p) => p,
        Err(e) => return vec![rejected(family, q, a, xi, e.to_string())],
    };
    let mut out: Vec<CheckReport> = STRUCTURAL_CHECKS.iter().filter_map(|id| structural_check(id, &pair)).collect();
    out.extend(registry_point_checks(&pair, true));
    out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    out
}

/// Whether a bundle certifies its premises: nothing failed or was rejected.
pub fn all_pass(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| matches!(r.status, Status::Pass | Status::Skipped))
}

/// Runs one named check at a concrete parameter set, merging the results of
/// all registry rows sharing the id.
pub fn check(id: &str, family: Option<Family>, q: u64, a: Option<u64>, xi: Option<u64>) -> Result<CheckReport, VerifyError> {
    let is_structural = STRUCTURAL_CHECKS.contains(&id);
    let entries: Vec<&Entry> = registry().iter().filter(|e| e.id == id).collect();
    if !is_structural && entries.is_empty() {
        return Err(VerifyError::UnknownCheck(id.into()));
    }
    let candidates: Vec<Family> = match family {
        Some(f) => vec![f],
        None => Family::ALL.into_iter().filter(|f| f.applies_to(q)).collect(),
    };
    let p = crate::arith::prime_power(q).map(|(p, _)| p).unwrap_or(0);
    let family = candidates
        .iter()
        .copied()
        .find(|&f| is_structural || entries.iter().any(|e| e.applies(f, p)))
        .or(candidates.first().copied())
        .ok_or_else(|| VerifyError::NotApplicable(id.into(), format!("q = {q}")))?;
    // Field-scoped checks do not depend on `a`; any valid value will do.
    let field_scoped = !entries.is_empty() && entries.iter().all(|e| e.per_field);
    let a = match a {
        None if field_scoped && family.uses_a() => generators::valid_a_values(family, q, xi).ok().and_then(|v| v.first().copied()),
        a => a,
    };
    let pair = match build_pair(family, q, a, xi) {
        Ok(p) => p,
        Err(e) => {
            let mut r = rejected(family, q, a, xi, e.to_string());
            r.check_id = id.into();
            return Ok(r);
        }
    };
    if is_structural {
        return structural_check(id, &pair)
            .ok_or_else(|| VerifyError::NotApplicable(id.into(), family.name().into()));
    }
    let start = Instant::now();
    let applicable: Vec<&Entry> = entries.iter().copied().filter(|e| e.applies(family, p) && e.runs_point()).collect();
    if applicable.is_empty() {
        return Err(VerifyError::NotApplicable(id.into(), format!("{family} over GF({q})")));
    }
    let mut reports = Vec::new();
    for e in &applicable {
        match run::run_point(e, family, &pair.field, pair.a, pair.xi) {
            Some(r) => reports.push(r),
            None => reports.push(CheckReport::skipped(
                id.into(),
                field_tag(&pair),
                format!("stated only for (q, a) in {:?}", e.instances),
                e.coverage,
            )),
        }
    }
    Ok(merge(id, field_tag(&pair), reports, start))
}

/// Combines the reports of several registry rows into one.
fn merge(id: &str, params: Params, reports: Vec<CheckReport>, start: Instant) -> CheckReport {
    if reports.len() == 1 {
        return reports.into_iter().next().expect("one report");
    }
    let status = if reports.iter().any(|r| r.status == Status::Fail) {
        Status::Fail
    } else if reports.iter().any(|r| r.status == Status::Pass) {
        Status::Pass
    } else {
        Status::Skipped
    };
    let mut evidence = Vec::new();
    let mut reasons = Vec::new();
    for r in &reports {
        let tag = r.params.tags.first().cloned().unwrap_or_default();
        evidence.extend(r.evidence.iter().map(|e| format!("{tag}: {e}")));
        if let Some(why) = &r.reason {
            reasons.push(format!("{tag}: {why}"));
        }
    }
    let coverage = reports.iter().map(|r| r.coverage).max().unwrap_or(Coverage::Full);
    CheckReport {
        check_id: id.into(),
        params,
        status,
        reason: (status == Status::Skipped).then(|| reasons.join("; ")),
        evidence,
        coverage,
        elapsed: start.elapsed(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spin_of_identity_is_one() {
        let k = Field::prime(5).unwrap();
        let i = Matrix::identity(&k, 8);
        let s = spin_dimension(&i, &i);
        assert_eq!(s.dimension, 1);
        assert_eq!(s.basis_words, vec!["I".to_string()]);
    }

    #[test]
    fn prime_sets_contain_two_and_three() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            for s in [Sign::Plus, Sign::Minus] {
                let set = prime_set_omega(s, q);
                assert!(set.contains(&2) && set.contains(&3), "{q}");
            }
        }
    }

    #[test]
    fn unknown_check_is_an_error() {
        assert_eq!(check("nope", None, 5, Some(1), None).unwrap_err(), VerifyError::UnknownCheck("nope".into()));
    }
}
