//! Elementary collapses and expansions, greedy collapsing and a bounded
//! backtracking search for collapsibility.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{Simplex, SimplicialComplex};
use crate::homology::is_acyclic;
use crate::simpmap::SimplicialMap;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CollapseError {
    #[error("illegal move ({sigma} ; {tau}): {reason}")]
    IllegalMove { sigma: Simplex, tau: Simplex, reason: String },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

fn illegal(sigma: &Simplex, tau: &Simplex, reason: &str) -> CollapseError {
    CollapseError::IllegalMove { sigma: sigma.clone(), tau: tau.clone(), reason: reason.into() }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseSequence {
    pub moves: Vec<(Simplex, Simplex)>,
}

impl CollapseSequence {
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Applies every move in order, failing at the first illegal one.
    pub fn replay(&self, k: &SimplicialComplex) -> Result<SimplicialComplex, CollapseError> {
        self.moves.iter().try_fold(k.clone(), |acc, (s, t)| collapse_step(&acc, s, t))
    }

    /// Lines `σ ; τ`, vertices separated by spaces.
    pub fn to_text(&self) -> String {
        let list = |s: &Simplex| s.vertices().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
        self.moves.iter().map(|(s, t)| format!("{} ; {}\n", list(s), list(t))).collect()
    }

    pub fn parse(text: &str) -> Result<Self, CollapseError> {
        let mut moves = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| CollapseError::Parse { line: i + 1, message };
            let (a, b) = line.split_once(';').ok_or_else(|| err("expected `σ ; τ`".into()))?;
            let simplex = |part: &str| -> Result<Simplex, CollapseError> {
                let vs = part
                    .split_whitespace()
                    .map(|t| t.parse().map_err(|_| err(format!("bad vertex `{t}`"))))
                    .collect::<Result<Vec<_>, _>>()?;
                Simplex::new(vs).map_err(|e| err(e.to_string()))
            };
            moves.push((simplex(a)?, simplex(b)?));
        }
        Ok(CollapseSequence { moves })
    }
}

impl fmt::Display for CollapseSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Free pairs `(σ, τ)` in tie-break order: higher `dim τ` first, then `σ` ascending.
pub fn free_faces(k: &SimplicialComplex) -> Vec<(Simplex, Simplex)> {
    let mut up: BTreeMap<&Simplex, (usize, Option<&Simplex>)> = BTreeMap::new();
    let facets: Vec<(Simplex, &Simplex)> =
        k.simplices().flat_map(|t| t.facets().into_iter().map(move |s| (s, t))).collect();
    for (s, t) in &facets {
        let s = k.simplex_set().get(s).expect("complex is closed");
        let e = up.entry(s).or_insert((0, None));
        e.0 += 1;
        e.1 = Some(t);
    }
    // a unique immediate coface is the unique strict coface
    let mut pairs: Vec<(Simplex, Simplex)> =
        up.into_iter().filter(|(_, (c, _))| *c == 1).map(|(s, (_, t))| (s.clone(), t.expect("counted").clone())).collect();
    pairs.sort_by(|a, b| b.1.dim().cmp(&a.1.dim()).then_with(|| a.0.cmp(&b.0)));
    pairs
}

pub fn is_free_pair(k: &SimplicialComplex, sigma: &Simplex, tau: &Simplex) -> bool {
    k.contains(sigma)
        && k.contains(tau)
        && tau.dim() == sigma.dim() + 1
        && sigma.is_face_of(tau)
        && k.cofaces(sigma) == [tau.clone()]
}

pub fn collapse_step(k: &SimplicialComplex, sigma: &Simplex, tau: &Simplex) -> Result<SimplicialComplex, CollapseError> {
    if !is_free_pair(k, sigma, tau) {
        return Err(illegal(sigma, tau, "not a free pair"));
    }
    Ok(k.without(&[sigma, tau]))
}

pub fn greedy_collapse(k: &SimplicialComplex) -> (SimplicialComplex, CollapseSequence) {
    let mut cur = k.clone();
    let mut seq = CollapseSequence::default();
    while let Some((s, t)) = free_faces(&cur).into_iter().next() {
        cur = cur.without(&[&s, &t]);
        seq.moves.push((s, t));
    }
    (cur, seq)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Collapsibility {
    Yes(CollapseSequence),
    No,
    BudgetExhausted,
}

/// Depth-first search over free-pair choices for a collapse to one vertex.
/// `budget` bounds the number of expanded nodes; states already refuted are skipped.
pub fn is_collapsible(k: &SimplicialComplex, budget: usize) -> Collapsibility {
    // a collapsible complex is acyclic, so this refutes outright
    if !is_acyclic(k) {
        return Collapsibility::No;
    }
    let mut search = Search { budget, expanded: 0, refuted: HashSet::new(), path: Vec::new() };
    match search.run(k) {
        Some(true) => Collapsibility::Yes(CollapseSequence { moves: search.path }),
        Some(false) => Collapsibility::No,
        None => Collapsibility::BudgetExhausted,
    }
}

struct Search {
    budget: usize,
    expanded: usize,
    refuted: HashSet<Vec<Simplex>>,
    path: Vec<(Simplex, Simplex)>,
}

impl Search {
    /// `None` when the budget runs out.
    fn run(&mut self, k: &SimplicialComplex) -> Option<bool> {
        if k.len() == 1 {
            return Some(true);
        }
        let key: Vec<Simplex> = k.simplices().cloned().collect();
        if self.refuted.contains(&key) {
            return Some(false);
        }
        if self.expanded >= self.budget {
            return None;
        }
        self.expanded += 1;
        for (s, t) in free_faces(k) {
            self.path.push((s.clone(), t.clone()));
            match self.run(&k.without(&[&s, &t])) {
                Some(true) => return Some(true),
                Some(false) => {
                    self.path.pop();
                }
                None => return None,
            }
        }
        self.refuted.insert(key);
        Some(false)
    }
}

/// Adds the pair `(σ, τ)` to `K` and returns the result with the inclusion.
/// Legal when neither is in `K`, `σ` is a facet of `τ`, and every other proper
/// face of `τ` is already in `K`.
pub fn expansion_inclusion(
    k: &SimplicialComplex,
    sigma: &Simplex,
    tau: &Simplex,
) -> Result<(SimplicialComplex, SimplicialMap), CollapseError> {
    if tau.dim() != sigma.dim() + 1 || !sigma.is_face_of(tau) {
        return Err(illegal(sigma, tau, "σ must be a facet of τ"));
    }
    if k.contains(sigma) || k.contains(tau) {
        return Err(illegal(sigma, tau, "pair already present"));
    }
    if let Some(missing) = tau.faces().into_iter().find(|f| f != sigma && f != tau && !k.contains(f)) {
        return Err(illegal(sigma, tau, &format!("face {missing} is missing")));
    }
    let bigger = k.with(&[sigma, tau]);
    let inc = SimplicialMap::inclusion(k, &bigger).expect("subcomplex");
    Ok((bigger, inc))
}
