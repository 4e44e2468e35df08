//! The check registry, parsed from `registry.txt`.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use super::recipe::{parse, Node, RecipeError};
use crate::generators::Family;

const SOURCE: &str = include_str!("registry.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chars {
    Any,
    Even,
    Odd,
    Three,
    OddNotThree,
}

impl Chars {
    pub fn admits(self, p: u64) -> bool {
        match self {
            Chars::Any => true,
            Chars::Even => p == 2,
            Chars::Odd => p != 2,
            Chars::Three => p == 3,
            Chars::OddNotThree => p != 2 && p != 3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Both,
    Point,
    Symbolic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Coverage {
    Full,
    Partial,
}

#[derive(Clone, Debug)]
pub struct Check {
    pub text: String,
    pub lhs: Node,
    pub rhs: Option<Node>,
    /// The assertion applies only where this expression vanishes.
    pub when: Option<(String, Node)>,
}

#[derive(Clone, Debug)]
pub enum Step {
    Let(String, Node),
    Check(Check),
}

#[derive(Clone, Debug)]
pub enum Assume {
    /// `name = expr`
    Bind(String, Node, String),
    /// `0 = expr`
    Zero(Node, String),
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub id: String,
    pub tag: String,
    pub families: Vec<Family>,
    pub chars: Chars,
    pub skip_p: Vec<(u64, String)>,
    pub requires: Vec<(Node, String)>,
    pub assumes: Vec<Assume>,
    pub instances: Vec<(u64, i64)>,
    pub free: Vec<String>,
    pub each: Vec<(String, Vec<(String, Node)>)>,
    pub steps: Vec<Step>,
    pub mode: Mode,
    pub coverage: Coverage,
    pub per_field: bool,
}

impl Entry {
    fn new(id: &str, tag: &str) -> Self {
        Entry {
            id: id.to_string(),
            tag: tag.to_string(),
            families: Vec::new(),
            chars: Chars::Any,
            skip_p: Vec::new(),
            requires: Vec::new(),
            assumes: Vec::new(),
            instances: Vec::new(),
            free: Vec::new(),
            each: Vec::new(),
            steps: Vec::new(),
            mode: Mode::Both,
            coverage: Coverage::Full,
            per_field: false,
        }
    }

    /// Every identifier the entry mentions.
    pub fn names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for (n, _) in &self.requires {
            n.names(&mut out);
        }
        for a in &self.assumes {
            match a {
                Assume::Bind(_, n, _) | Assume::Zero(n, _) => n.names(&mut out),
            }
        }
        for (_, vs) in &self.each {
            vs.iter().for_each(|(_, n)| n.names(&mut out));
        }
        for s in &self.steps {
            match s {
                Step::Let(_, n) => n.names(&mut out),
                Step::Check(c) => {
                    c.lhs.names(&mut out);
                    if let Some(r) = &c.rhs {
                        r.names(&mut out);
                    }
                    if let Some((_, w)) = &c.when {
                        w.names(&mut out);
                    }
                }
            }
        }
        out
    }

    pub fn applies(&self, family: Family, p: u64) -> bool {
        self.families.contains(&family) && self.chars.admits(p)
    }

    pub fn runs_point(&self) -> bool {
        self.mode != Mode::Symbolic
    }

    pub fn runs_symbolic(&self) -> bool {
        self.mode != Mode::Point
    }
}

fn bad(line: usize, m: impl std::fmt::Display) -> RecipeError {
    RecipeError(format!("registry line {line}: {m}"))
}

fn split_binding(s: &str) -> Option<(&str, &str)> {
    let (l, r) = s.split_once('=')?;
    Some((l.trim(), r.trim()))
}

pub fn parse_registry(src: &str) -> Result<Vec<Entry>, RecipeError> {
    let mut out: Vec<Entry> = Vec::new();
    for (k, raw) in src.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(h) = line.strip_prefix('[') {
            let h = h.strip_suffix(']').ok_or_else(|| bad(line_no, "unterminated header"))?;
            let (id, tag) = h.split_once(' ').unwrap_or((h, ""));
            out.push(Entry::new(id.trim(), tag.trim()));
            continue;
        }
        let e = out.last_mut().ok_or_else(|| bad(line_no, "key before the first header"))?;
        let (key, val) = split_binding(line).ok_or_else(|| bad(line_no, "expected `key = value`"))?;
        let expr = |s: &str| parse(s).map_err(|err| bad(line_no, err));
        match key {
            "families" => {
                for f in val.split(',') {
                    e.families.push(f.trim().parse().map_err(|err| bad(line_no, err))?);
                }
            }
            "chars" => {
                e.chars = match val {
                    "any" => Chars::Any,
                    "even" => Chars::Even,
                    "odd" => Chars::Odd,
                    "3" => Chars::Three,
                    "odd-not-3" => Chars::OddNotThree,
                    other => return Err(bad(line_no, format!("unknown chars `{other}`"))),
                }
            }
            "skip_p" => {
                let (p, why) = val.split_once(':').ok_or_else(|| bad(line_no, "expected `p: reason`"))?;
                e.skip_p.push((p.trim().parse().map_err(|_| bad(line_no, "bad prime"))?, why.trim().to_string()));
            }
            "requires" => {
                let (x, why) = val.split_once('|').ok_or_else(|| bad(line_no, "expected `expr | hypothesis`"))?;
                e.requires.push((expr(x.trim())?, why.trim().to_string()));
            }
            "assume" => {
                let (name, rhs) = split_binding(val).ok_or_else(|| bad(line_no, "expected `name = expr`"))?;
                if name == "0" {
                    e.assumes.push(Assume::Zero(expr(rhs)?, val.to_string()));
                } else {
                    e.assumes.push(Assume::Bind(name.to_string(), expr(rhs)?, val.to_string()));
                }
            }
            "instance" => {
                let (q, a) = val.split_once(',').ok_or_else(|| bad(line_no, "expected `q, a`"))?;
                let q = q.trim().parse().map_err(|_| bad(line_no, "bad q"))?;
                let a = a.trim().parse().map_err(|_| bad(line_no, "bad a"))?;
                e.instances.push((q, a));
            }
            "free" => e.free.push(val.to_string()),
            "each" => {
                let (name, vals) = val.split_once(':').ok_or_else(|| bad(line_no, "expected `name: values`"))?;
                let vs = vals.split(',').map(|v| Ok((v.trim().to_string(), expr(v.trim())?))).collect::<Result<Vec<_>, RecipeError>>()?;
                e.each.push((name.trim().to_string(), vs));
            }
            "let" => {
                let (name, rhs) = split_binding(val).ok_or_else(|| bad(line_no, "expected `name = expr`"))?;
                e.steps.push(Step::Let(name.to_string(), expr(rhs)?));
            }
            "check" => {
                let (body, when) = match val.rsplit_once(" when ") {
                    Some((b, w)) => (b.trim(), Some((w.trim().to_string(), expr(w.trim())?))),
                    None => (val, None),
                };
                let (lhs, rhs) = match body.split_once("==") {
                    Some((l, r)) => (expr(l.trim())?, Some(expr(r.trim())?)),
                    None => (expr(body)?, None),
                };
                e.steps.push(Step::Check(Check { text: val.to_string(), lhs, rhs, when }));
            }
            "mode" => {
                e.mode = match val {
                    "both" => Mode::Both,
                    "point" => Mode::Point,
                    "symbolic" => Mode::Symbolic,
                    other => return Err(bad(line_no, format!("unknown mode `{other}`"))),
                }
            }
            "coverage" => {
                e.coverage = match val {
                    "full" => Coverage::Full,
                    "partial" => Coverage::Partial,
                    other => return Err(bad(line_no, format!("unknown coverage `{other}`"))),
                }
            }
            "scope" => {
                e.per_field = match val {
                    "instance" => false,
                    "field" => true,
                    other => return Err(bad(line_no, format!("unknown scope `{other}`"))),
                }
            }
            other => return Err(bad(line_no, format!("unknown key `{other}`"))),
        }
    }
    for e in &out {
        if e.families.is_empty() {
            return Err(RecipeError(format!("entry {} {} lists no family", e.id, e.tag)));
        }
    }
    Ok(out)
}

/// The built-in registry.
pub fn registry() -> &'static [Entry] {
    static REG: OnceLock<Vec<Entry>> = OnceLock::new();
    REG.get_or_init(|| parse_registry(SOURCE).expect("built-in registry parses"))
}

/// Distinct check ids, sorted.
pub fn check_ids() -> Vec<String> {
    let ids: BTreeSet<String> = registry().iter().map(|e| e.id.clone()).collect();
    ids.into_iter().collect()
}
