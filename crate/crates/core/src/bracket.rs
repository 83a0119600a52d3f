//! Kauffman bracket state sum over unoriented diagram shadows.
//!
//! The engine works with the multiplicative bracket `B(D) = sum over states
//! A^(#A - #B) * delta^(#circles)`, where `delta = -A^2 - A^{-2}`. This
//! differs from the usual bracket by one factor of delta (`B(D) =
//! delta * <D>`), which makes `B` multiplicative over disjoint unions and so
//! lets split diagrams factor cleanly. The Jones normalization divides the
//! factor back out.
//!
//! Reductions applied before branching:
//! * curl (Reidemeister I) removal with its monomial bracket factor,
//! * free circle absorption into powers of delta,
//! * factorization over connected pieces of the crossing graph,
//! * memoization keyed on a relabeling-invariant code of the shadow.

use std::collections::{HashMap, HashSet};

use crate::diagram::LinkDiagram;
use crate::poly::LaurentPoly;

/// Errors raised by the bracket/Jones evaluators.
#[derive(Debug, thiserror::Error)]
pub enum JonesError {
    #[error("state-sum node budget of {0} exhausted")]
    Budget(u64),
    #[error("internal error: odd exponent in the bracket variable")]
    OddExponent,
    #[error("internal error: exponent parity disagrees with component count")]
    Parity,
    #[error(transparent)]
    Poly(#[from] crate::poly::PolyError),
    #[error(transparent)]
    Diagram(#[from] crate::diagram::DiagramError),
}

/// The two unoriented resolutions of a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Smoothing {
    /// Joins slots (0,1) and (2,3).
    A,
    /// Joins slots (1,2) and (3,0).
    B,
}

/// Unoriented shadow of a diagram: crossing tuples (counterclockwise, slots 0
/// and 2 under) plus a count of crossing-free circles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shadow {
    pub crossings: Vec<[u32; 4]>,
    pub circles: u32,
}

impl From<&LinkDiagram> for Shadow {
    fn from(d: &LinkDiagram) -> Self {
        let used: HashSet<u32> = d
            .crossings()
            .iter()
            .flat_map(|x| x.0.iter().copied())
            .collect();
        let circles = d
            .components()
            .iter()
            .filter(|c| c.len() == 1 && !used.contains(&c[0]))
            .count() as u32;
        Shadow {
            crossings: d.crossings().iter().map(|x| x.0).collect(),
            circles,
        }
    }
}

impl Shadow {
    /// Replaces crossing `i` by one of its two resolutions, merging the edge
    /// pairs it joined. Closed-up edges become counted circles.
    pub fn resolve(&self, i: usize, s: Smoothing) -> Shadow {
        let t = self.crossings[i];
        let mut out = Shadow {
            crossings: self
                .crossings
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, x)| *x)
                .collect(),
            circles: self.circles,
        };
        let pairs = match s {
            Smoothing::A => [(t[0], t[1]), (t[2], t[3])],
            Smoothing::B => [(t[1], t[2]), (t[3], t[0])],
        };
        let mut second = pairs[1];
        out.merge(pairs[0].0, pairs[0].1, &mut second);
        let mut dummy = (u32::MAX, u32::MAX);
        out.merge(second.0, second.1, &mut dummy);
        out
    }

    /// Merges edges `x` and `y` (relabeling `y` to `x`); a self-merge closes a
    /// circle. `pending` is another edge pair that must see the relabeling.
    fn merge(&mut self, x: u32, y: u32, pending: &mut (u32, u32)) {
        if x == y {
            self.circles += 1;
            return;
        }
        for t in &mut self.crossings {
            for e in t.iter_mut() {
                if *e == y {
                    *e = x;
                }
            }
        }
        if pending.0 == y {
            pending.0 = x;
        }
        if pending.1 == y {
            pending.1 = x;
        }
    }

    /// Removes one curl if present, returning its bracket factor
    /// (`-A^3` or `-A^{-3}`).
    fn remove_curl(&mut self) -> Option<LaurentPoly> {
        let mut found: Option<(usize, i64, u32, u32)> = None;
        'outer: for (i, t) in self.crossings.iter().enumerate() {
            for s in 0..4 {
                if t[s] == t[(s + 1) % 4] {
                    // Loop on an A-pair of slots leaves factor -A^3, on a
                    // B-pair -A^{-3}.
                    let exp = if s == 0 || s == 2 { 3 } else { -3 };
                    found = Some((i, exp, t[(s + 2) % 4], t[(s + 3) % 4]));
                    break 'outer;
                }
            }
        }
        let (i, exp, p, q) = found?;
        self.crossings.remove(i);
        let mut dummy = (u32::MAX, u32::MAX);
        self.merge(p, q, &mut dummy);
        Some(LaurentPoly::monomial(exp, -1))
    }

    /// Splits into connected pieces of the crossing graph. Circles are
    /// returned separately.
    fn split(&self) -> (Vec<Shadow>, u32) {
        let n = self.crossings.len();
        let mut edge_to: HashMap<u32, Vec<usize>> = HashMap::new();
        for (i, t) in self.crossings.iter().enumerate() {
            for &e in t {
                edge_to.entry(e).or_default().push(i);
            }
        }
        let mut piece_of: Vec<Option<usize>> = vec![None; n];
        let mut pieces: Vec<Shadow> = Vec::new();
        for seed in 0..n {
            if piece_of[seed].is_some() {
                continue;
            }
            let id = pieces.len();
            let mut stack = vec![seed];
            piece_of[seed] = Some(id);
            let mut members = Vec::new();
            while let Some(i) = stack.pop() {
                members.push(i);
                for &e in &self.crossings[i] {
                    for &j in &edge_to[&e] {
                        if piece_of[j].is_none() {
                            piece_of[j] = Some(id);
                            stack.push(j);
                        }
                    }
                }
            }
            members.sort_unstable();
            pieces.push(Shadow {
                crossings: members.iter().map(|&i| self.crossings[i]).collect(),
                circles: 0,
            });
        }
        (pieces, self.circles)
    }

    /// Relabeling-invariant code: minimum over BFS traversals from every root
    /// crossing and both rotation parities. Equal codes imply isomorphic
    /// shadows (rotation of a tuple by two slots preserves the crossing).
    fn code(&self) -> Vec<u32> {
        let mut edge_to: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
        for (i, t) in self.crossings.iter().enumerate() {
            for (s, &e) in t.iter().enumerate() {
                edge_to.entry(e).or_default().push((i, s));
            }
        }
        let mut best: Option<Vec<u32>> = None;
        for root in 0..self.crossings.len() {
            for rot in [0usize, 2] {
                let code = self.bfs_code(root, rot, &edge_to);
                if best.as_ref().is_none_or(|b| code < *b) {
                    best = Some(code);
                }
            }
        }
        let mut out = best.unwrap_or_default();
        out.push(u32::MAX);
        out.push(self.circles);
        out
    }

    fn bfs_code(
        &self,
        root: usize,
        root_rot: usize,
        edge_to: &HashMap<u32, Vec<(usize, usize)>>,
    ) -> Vec<u32> {
        let n = self.crossings.len();
        let mut rot: Vec<usize> = vec![usize::MAX; n];
        rot[root] = root_rot;
        let mut order = vec![root];
        let mut relabel: HashMap<u32, u32> = HashMap::new();
        let mut next_edge = 0u32;
        let mut code = Vec::with_capacity(4 * n);
        let mut qi = 0;
        while qi < order.len() {
            let i = order[qi];
            qi += 1;
            let r = rot[i];
            for k in 0..4 {
                let e = self.crossings[i][(r + k) % 4];
                let label = *relabel.entry(e).or_insert_with(|| {
                    next_edge += 1;
                    next_edge
                });
                code.push(label);
                for &(j, s) in &edge_to[&e] {
                    if rot[j] == usize::MAX {
                        // Rotate the neighbor so the discovery edge keeps its
                        // slot parity at the lowest slot, fixing orientation
                        // of its tuple deterministically.
                        rot[j] = s - (s % 2);
                        order.push(j);
                    }
                }
            }
        }
        code
    }
}

/// Memoized Kauffman bracket evaluator with a node budget.
pub struct BracketEngine {
    memo: HashMap<Vec<u32>, LaurentPoly>,
    memo_enabled: bool,
    budget: u64,
    /// Recursion nodes expanded since construction (telemetry).
    pub nodes: u64,
    /// Memo hits since construction (telemetry).
    pub memo_hits: u64,
    delta: LaurentPoly,
}

impl Default for BracketEngine {
    fn default() -> Self {
        Self::new(10_000_000, true)
    }
}

impl BracketEngine {
    pub fn new(budget: u64, memo_enabled: bool) -> Self {
        Self {
            memo: HashMap::new(),
            memo_enabled,
            budget,
            nodes: 0,
            memo_hits: 0,
            delta: delta(),
        }
    }

    /// Multiplicative bracket `B(D) = delta * <D>` of a shadow,
    /// as a Laurent polynomial in `A`.
    pub fn bracket_b(&mut self, sh: Shadow) -> Result<LaurentPoly, JonesError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(JonesError::Budget(self.budget));
        }
        let mut sh = sh;
        let mut factor = LaurentPoly::one();
        while let Some(f) = sh.remove_curl() {
            factor = &factor * &f;
        }
        if sh.circles > 0 {
            factor = &factor * &self.delta.pow(sh.circles);
            sh.circles = 0;
        }
        if sh.crossings.is_empty() {
            return Ok(factor);
        }
        let (pieces, _) = sh.split();
        if pieces.len() > 1 {
            let mut acc = factor;
            for p in pieces {
                acc = &acc * &self.bracket_b(p)?;
            }
            return Ok(acc);
        }
        let key = if self.memo_enabled {
            let key = sh.code();
            if let Some(hit) = self.memo.get(&key) {
                self.memo_hits += 1;
                return Ok(&factor * hit);
            }
            Some(key)
        } else {
            None
        };
        let i = pivot(&sh);
        let a = self.bracket_b(sh.resolve(i, Smoothing::A))?;
        let b = self.bracket_b(sh.resolve(i, Smoothing::B))?;
        let val = &(&a * &LaurentPoly::monomial(1, 1)) + &(&b * &LaurentPoly::monomial(-1, 1));
        if let Some(key) = key {
            self.memo.insert(key, val.clone());
        }
        Ok(&factor * &val)
    }
}

/// `delta = -A^2 - A^{-2}`, the loop value of the bracket.
pub fn delta() -> LaurentPoly {
    LaurentPoly::from_pairs([(2, -1), (-2, -1)])
}

/// Crossing sharing the most edges with a single other crossing; resolving it
/// collapses twist regions quickly.
fn pivot(sh: &Shadow) -> usize {
    let n = sh.crossings.len();
    let mut best = (0usize, 0usize);
    for i in 0..n {
        let ti: HashSet<u32> = sh.crossings[i].iter().copied().collect();
        let mut local = 0;
        for j in 0..n {
            if i == j {
                continue;
            }
            let shared = sh.crossings[j].iter().filter(|e| ti.contains(e)).count();
            local = local.max(shared);
        }
        if local > best.1 {
            best = (i, local);
        }
    }
    best.0
}

/// Brute-force bracket over all `2^n` states; oracle for the engine on small
/// inputs.
pub fn bracket_b_brute(sh: &Shadow) -> LaurentPoly {
    let n = sh.crossings.len();
    assert!(n <= 20, "brute force limited to small shadows");
    let d = delta();
    let mut total = LaurentPoly::zero();
    for state in 0u32..(1 << n) {
        // Union-find over edges, one merge pair set per crossing.
        let mut parent: HashMap<u32, u32> = HashMap::new();
        fn find(p: &mut HashMap<u32, u32>, mut x: u32) -> u32 {
            loop {
                let q = *p.entry(x).or_insert(x);
                if q == x {
                    return x;
                }
                let r = *p.entry(q).or_insert(q);
                p.insert(x, r);
                x = r;
            }
        }
        let mut circles = sh.circles;
        let mut exp: i64 = 0;
        for (i, t) in sh.crossings.iter().enumerate() {
            let pairs = if state >> i & 1 == 0 {
                exp += 1;
                [(t[0], t[1]), (t[2], t[3])]
            } else {
                exp -= 1;
                [(t[1], t[2]), (t[3], t[0])]
            };
            for (x, y) in pairs {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx == ry {
                    circles += 1;
                } else {
                    parent.insert(rx, ry);
                }
            }
        }
        total = &total + &(&LaurentPoly::monomial(exp, 1) * &d.pow(circles));
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{Crossing, LinkDiagram};

    fn trefoil_left() -> LinkDiagram {
        LinkDiagram::new(
            "trefoil",
            vec![
                Crossing([1, 4, 2, 5]),
                Crossing([3, 6, 4, 1]),
                Crossing([5, 2, 6, 3]),
            ],
            vec![vec![1, 2, 3, 4, 5, 6]],
        )
        .unwrap()
    }

    fn figure_eight() -> LinkDiagram {
        LinkDiagram::new(
            "fig8",
            vec![
                Crossing([4, 2, 5, 1]),
                Crossing([8, 6, 1, 5]),
                Crossing([6, 3, 7, 4]),
                Crossing([2, 7, 3, 8]),
            ],
            vec![vec![1, 2, 3, 4, 5, 6, 7, 8]],
        )
        .unwrap()
    }

    #[test]
    fn circle_brackets() {
        let mut eng = BracketEngine::default();
        let one_circle = Shadow {
            crossings: vec![],
            circles: 1,
        };
        assert_eq!(eng.bracket_b(one_circle).unwrap(), delta());
        let two = Shadow {
            crossings: vec![],
            circles: 2,
        };
        assert_eq!(eng.bracket_b(two).unwrap(), delta().pow(2));
    }

    #[test]
    fn engine_matches_brute_force_on_small_diagrams() {
        for d in [trefoil_left(), figure_eight()] {
            for v in [&d, &d.mirror()] {
                let sh = Shadow::from(v);
                let mut eng = BracketEngine::default();
                assert_eq!(eng.bracket_b(sh.clone()).unwrap(), bracket_b_brute(&sh));
            }
        }
    }

    #[test]
    fn memoized_and_unmemoized_agree() {
        let d = figure_eight();
        let sh = Shadow::from(&d);
        let mut with = BracketEngine::new(1_000_000, true);
        let mut without = BracketEngine::new(1_000_000, false);
        assert_eq!(
            with.bracket_b(sh.clone()).unwrap(),
            without.bracket_b(sh).unwrap()
        );
    }

    #[test]
    fn curl_removal_factor() {
        // One-crossing unknot shadows reduce to (-A^{+-3}) * delta.
        let pos = Shadow {
            crossings: vec![[1, 1, 2, 2]],
            circles: 0,
        };
        let mut eng = BracketEngine::default();
        let got = eng.bracket_b(pos.clone()).unwrap();
        assert_eq!(got, bracket_b_brute(&pos));
        let neg = Shadow {
            crossings: vec![[1, 2, 2, 1]],
            circles: 0,
        };
        assert_eq!(eng.bracket_b(neg.clone()).unwrap(), bracket_b_brute(&neg));
    }

    #[test]
    fn budget_is_enforced() {
        let d = figure_eight();
        let mut eng = BracketEngine::new(2, true);
        assert!(matches!(
            eng.bracket_b(Shadow::from(&d)),
            Err(JonesError::Budget(2))
        ));
    }

    #[test]
    fn split_shadows_factor() {
        let d = trefoil_left();
        let u = d.disjoint_union(&figure_eight());
        let mut eng = BracketEngine::default();
        let lhs = eng.bracket_b(Shadow::from(&u)).unwrap();
        let rhs = &eng.bracket_b(Shadow::from(&d)).unwrap()
            * &eng.bracket_b(Shadow::from(&figure_eight())).unwrap();
        assert_eq!(lhs, rhs);
    }
}
