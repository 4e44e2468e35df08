//! Executes registry entries pointwise over a concrete field or symbolically
//! over GF(p^2)(a, xi, l, b).

use std::collections::BTreeSet;
use std::time::Instant;

use super::recipe::{parse, Builder, CheckRing, Env, Facts, Node, RecipeError, Value};
use super::registry::{Assume, Entry, Step};
use super::{prime_set_omega, CheckReport, Params, Status};
use crate::forms::Sign;
use crate::generators::{self, Family, J_MINUS_ODD};
use crate::gf::{adjoin_cube_root, Extension, Fe, Field};
use crate::linalg::mpoly::{VAR_A, VAR_B, VAR_L, VAR_XI};
use crate::linalg::{Matrix, SymRing};
use crate::ring::Ring;

/// Primes used for symbolic checks.
pub const SYMBOLIC_PRIMES: [u64; 4] = [2, 3, 5, 7];

/// Longest rendering kept in evidence.
const EVIDENCE_MAX: usize = 400;

fn clip(s: String) -> String {
    if s.len() <= EVIDENCE_MAX {
        s
    } else {
        let mut cut = EVIDENCE_MAX;
        while !s.is_char_boundary(cut) {
            cut -= 1;
        }
        format!("{}... ({} chars)", &s[..cut], s.len())
    }
}

enum Outcome {
    Ran,
    Skipped(String),
}

/// Matrices named in recipes, built from the current `a` and `xi`.
fn builder<R: CheckRing>(family: Family, p: u64) -> impl Fn(&str, &Env<R>) -> Option<Result<Value<R>, RecipeError>> {
    move |name: &str, env: &Env<R>| {
        let table = match name {
            "x" => family.x_table(),
            "y" => family.y_table(),
            "G" if family == Family::MinusOdd => &J_MINUS_ODD,
            "G" => return Some(Ok(Value::Matrix(hyperbolic_matrix(&env.ring)))),
            "tx" | "t2x" | "ty" | "t2y" if family.is_plus() => {
                let [tx, t2x, ty, t2y] = generators::triality_tables(p);
                match name {
                    "tx" => tx,
                    "t2x" => t2x,
                    "ty" => ty,
                    _ => t2y,
                }
            }
            _ => return None,
        };
        let a = env.scalar("a").unwrap_or_else(|| env.ring.one());
        let xi = env.scalar("xi");
        Some(
            generators::eval_table(&env.ring, table, &a, xi.as_ref())
                .map(Value::Matrix)
                .map_err(|e| RecipeError(e.to_string())),
        )
    }
}

fn hyperbolic_matrix<R: Ring>(ring: &R) -> Matrix<R> {
    Matrix::from_fn(ring, 8, 8, |i, j| if (i + 4 == j) || (j + 4 == i) { ring.one() } else { ring.zero() })
}

/// Runs the steps of `entry` once for every `each` combination and free
/// sample, appending evidence lines.
fn execute<R: CheckRing>(
    entry: &Entry,
    env: &Env<R>,
    pointwise: bool,
    free_samples: &[(&str, &str)],
    evidence: &mut Vec<String>,
) -> Result<(Outcome, bool), RecipeError> {
    // Cartesian product of the `each` lists and, pointwise, the free samples.
    let mut lists: Vec<(String, Vec<(String, Node)>)> = entry.each.clone();
    if pointwise {
        for name in &entry.free {
            let vals = free_samples.iter().map(|(l, s)| (l.to_string(), parse(s).expect("sample parses"))).collect();
            lists.push((name.clone(), vals));
        }
    }
    let mut combos: Vec<Vec<(String, String, Node)>> = vec![Vec::new()];
    for (name, vals) in &lists {
        combos = combos
            .into_iter()
            .flat_map(|c| {
                vals.iter().map(move |(label, node)| {
                    let mut c = c.clone();
                    c.push((name.clone(), label.clone(), node.clone()));
                    c
                })
            })
            .collect();
    }

    let mut ran = false;
    let mut ok = true;
    let mut first_skip: Option<String> = None;
    for combo in combos {
        let mut env = env.clone();
        let mut tags = Vec::new();
        for (name, label, node) in &combo {
            let v = env.eval(node)?;
            env.set(name, v);
            tags.push(format!("{name}={label}"));
        }
        let prefix = if tags.is_empty() { String::new() } else { format!("[{}] ", tags.join(" ")) };
        match bind_hypotheses(entry, &mut env, pointwise)? {
            Some(reason) => {
                first_skip.get_or_insert(format!("{prefix}{reason}"));
                continue;
            }
            None => {}
        }
        let mut any_assert = false;
        for step in &entry.steps {
            match step {
                Step::Let(name, node) => {
                    let v = env.eval(node)?;
                    env.set(name, v);
                }
                Step::Check(c) => {
                    if let Some((wsrc, wnode)) = &c.when {
                        if !pointwise {
                            evidence.push(format!("{prefix}{}: not applicable symbolically", c.text));
                            continue;
                        }
                        let w = env.eval(wnode)?;
                        if !env.equal(&w, &Value::Int(0)) {
                            evidence.push(format!("{prefix}{}: condition {wsrc} = 0 does not hold", c.text));
                            continue;
                        }
                    }
                    any_assert = true;
                    let lhs = env.eval(&c.lhs)?;
                    match &c.rhs {
                        Some(rn) => {
                            let rhs = env.eval(rn)?;
                            if env.equal(&lhs, &rhs) {
                                evidence.push(clip(format!("{prefix}{}: {}", c.text, env.render(&lhs))));
                            } else {
                                ok = false;
                                evidence.push(clip(format!(
                                    "{prefix}{}: computed {} expected {}",
                                    c.text,
                                    env.render(&lhs),
                                    env.render(&rhs)
                                )));
                            }
                        }
                        None => {
                            let pass = matches!(lhs, Value::Bool(true));
                            ok &= pass;
                            evidence.push(format!("{prefix}{}: {}", c.text, env.render(&lhs)));
                        }
                    }
                }
            }
        }
        ran |= any_assert;
        if !any_assert {
            first_skip.get_or_insert(format!("{prefix}no assertion applies"));
        }
    }
    if ran {
        Ok((Outcome::Ran, ok))
    } else {
        Ok((Outcome::Skipped(first_skip.unwrap_or_else(|| "nothing to run".into())), true))
    }
}

/// Applies `requires` and `assume` lines; returns a skip reason when a
/// hypothesis fails pointwise.
fn bind_hypotheses<R: CheckRing>(entry: &Entry, env: &mut Env<R>, pointwise: bool) -> Result<Option<String>, RecipeError> {
    for a in &entry.assumes {
        match a {
            Assume::Bind(name, node, text) => {
                let v = env.eval(node)?;
                if pointwise {
                    let cur = env.get(name).ok_or_else(|| RecipeError(format!("`{name}` is unbound")))?;
                    if !env.equal(&cur, &v) {
                        return Ok(Some(format!("hypothesis {text} does not hold")));
                    }
                } else {
                    env.set(name, v);
                }
            }
            Assume::Zero(node, text) => {
                if !pointwise {
                    return Err(RecipeError(format!("`{text}` cannot be imposed symbolically")));
                }
                let v = env.eval(node)?;
                if !env.equal(&v, &Value::Int(0)) {
                    return Ok(Some(format!("hypothesis {text} does not hold")));
                }
            }
        }
    }
    if pointwise {
        for (node, text) in &entry.requires {
            let v = env.eval(node)?;
            if env.equal(&v, &Value::Int(0)) {
                return Ok(Some(format!("hypothesis {text} fails")));
            }
        }
    }
    Ok(None)
}

fn finish(entry: &Entry, params: Params, start: Instant, res: Result<(Outcome, bool), RecipeError>, mut evidence: Vec<String>) -> CheckReport {
    let (status, reason) = match res {
        Ok((Outcome::Ran, true)) => (Status::Pass, None),
        Ok((Outcome::Ran, false)) => (Status::Fail, None),
        Ok((Outcome::Skipped(r), _)) => (Status::Skipped, Some(r)),
        Err(e) => {
            evidence.push(format!("error: {e}"));
            (Status::Fail, Some(e.0))
        }
    };
    CheckReport { check_id: entry.id.clone(), params, status, reason, evidence, coverage: entry.coverage, elapsed: start.elapsed() }
}

fn tags_of(entry: &Entry, mode: &str) -> Vec<String> {
    let mut t = Vec::new();
    if !entry.tag.is_empty() {
        t.push(entry.tag.clone());
    }
    t.push(mode.to_string());
    t
}

/// Whether a pointwise entry is listed for this instance.
pub fn instance_listed(entry: &Entry, field: &Field, a: Fe) -> bool {
    entry.instances.is_empty() || entry.instances.iter().any(|&(q, ai)| q == field.q() && field.from_int(ai) == a)
}

/// Runs one entry at a concrete instance. Returns `None` when the entry is
/// restricted to other instances.
pub fn run_point(entry: &Entry, family: Family, field: &Field, a: Fe, xi: Option<Fe>) -> Option<CheckReport> {
    let start = Instant::now();
    let q = field.q();
    let p = field.p();
    let params = Params::point(family, q, family.uses_a().then_some(a.0), xi.map(|v| v.0), tags_of(entry, "point"));
    if !instance_listed(entry, field, a) {
        return None;
    }
    if let Some((_, why)) = entry.skip_p.iter().find(|(sp, _)| *sp == p) {
        return Some(CheckReport::skipped(entry.id.clone(), params, why.clone(), entry.coverage));
    }
    let names = entry.names();
    let res = point_env(entry, family, field, a, xi, &names).and_then(|(k, ext, omega, iota)| {
        let b: Box<Builder<Field>> = Box::new(builder::<Field>(family, p));
        let mut facts = Facts { base_field: Some(field.clone()), ..Default::default() };
        let sign = if family.is_plus() { Sign::Plus } else { Sign::Minus };
        facts.omega_primes = Some(prime_set_omega(sign, q).into_iter().collect());
        if ext.is_trivial() {
            facts.form = generators::family_form(family, field, a, xi).ok();
        }
        let mut env = Env::new(k.clone(), &*b, facts);
        env.set("a", Value::Scalar(ext.embed(a)));
        if let Some(xi) = xi {
            env.set("xi", Value::Scalar(ext.embed(xi)));
        }
        env.set("w", Value::Scalar(omega));
        if let Some(i) = iota {
            env.set("i", Value::Scalar(i));
        }
        env.set("p", Value::Int(p as i128));
        env.set("q", Value::Int(q as i128));
        env.set("f", Value::Int(field.f() as i128));
        let samples = [("0", "0"), ("1", "1"), ("-1", "-1"), ("a", "a"), ("a+1", "a + 1")];
        let mut ev = Vec::new();
        let r = execute(entry, &env, true, &samples, &mut ev);
        Ok((r, ev))
    });
    Some(match res {
        Ok((r, ev)) => finish(entry, params, start, r, ev),
        Err(e) => finish(entry, params, start, Err(e), Vec::new()),
    })
}

/// The field the pointwise run works in: GF(q), or GF(q^2) when a cube root
/// of unity or a square root of -1 is needed and missing. Returns the
/// field, the embedding of GF(q), omega (1 when p = 3) and iota.
fn point_env(
    _entry: &Entry,
    _family: Family,
    field: &Field,
    _a: Fe,
    _xi: Option<Fe>,
    names: &BTreeSet<String>,
) -> Result<(Field, Extension, Fe, Option<Fe>), RecipeError> {
    let p = field.p();
    let q = field.q();
    let needs_w = names.contains("w");
    let needs_i = names.contains("i");
    let want_ext = (needs_w && p != 3 && (q - 1) % 3 != 0) || (needs_i && p != 2 && q % 4 == 3);
    let ext = if want_ext {
        Extension::quadratic(field).map_err(|e| RecipeError(e.to_string()))?
    } else {
        Extension::trivial(field)
    };
    let k = ext.ext.clone();
    let omega = if p == 3 || !needs_w {
        k.one()
    } else {
        let (e2, w) = adjoin_cube_root(&k).map_err(|e| RecipeError(e.to_string()))?;
        debug_assert!(e2.is_trivial());
        w
    };
    let iota = if needs_i {
        Some(k.sqrt(k.neg(&k.one())).ok_or_else(|| RecipeError("no square root of -1".into()))?)
    } else {
        None
    };
    Ok((k, ext, omega, iota))
}

/// The coefficient field for symbolic checks in characteristic `p` with its
/// cube root of unity (1 when p = 3) and square root of -1.
pub fn symbolic_ring(p: u64) -> Result<(SymRing, Fe, Fe), RecipeError> {
    let k = Field::new(p, 2).map_err(|e| RecipeError(e.to_string()))?;
    let omega = if p == 3 {
        k.one()
    } else {
        adjoin_cube_root(&k).map_err(|e| RecipeError(e.to_string()))?.1
    };
    let iota = k.sqrt(k.neg(&k.one())).ok_or_else(|| RecipeError("no square root of -1".into()))?;
    Ok((SymRing::new(k, (p != 3).then_some(omega)), omega, iota))
}

/// Runs one entry symbolically in characteristic `p`.
pub fn run_symbolic(entry: &Entry, family: Family, p: u64) -> CheckReport {
    let start = Instant::now();
    let params = Params::symbolic(family, p, tags_of(entry, "symbolic"));
    if let Some((_, why)) = entry.skip_p.iter().find(|(sp, _)| *sp == p) {
        return CheckReport::skipped(entry.id.clone(), params, why.clone(), entry.coverage);
    }
    let res = symbolic_ring(p).map(|(ring, omega, iota)| {
        let b: Box<Builder<SymRing>> = Box::new(builder::<SymRing>(family, p));
        let mut env = Env::new(ring.clone(), &*b, Facts::default());
        env.set("a", Value::Scalar(ring.var(VAR_A)));
        env.set("xi", Value::Scalar(ring.var(VAR_XI)));
        env.set("l", Value::Scalar(ring.var(VAR_L)));
        env.set("b", Value::Scalar(ring.var(VAR_B)));
        env.set("w", Value::Scalar(ring.constant(omega)));
        env.set("i", Value::Scalar(ring.constant(iota)));
        env.set("p", Value::Int(p as i128));
        let mut ev = Vec::new();
        let r = execute(entry, &env, false, &[], &mut ev);
        (r, ev)
    });
    match res {
        Ok((r, ev)) => finish(entry, params, start, r, ev),
        Err(e) => finish(entry, params, start, Err(e), Vec::new()),
    }
}
