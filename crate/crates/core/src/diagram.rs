//! Oriented link diagrams as planar-diagram (PD) codes.
//!
//! A crossing is a 4-tuple of arc labels listed counterclockwise starting
//! from the *incoming under-strand*. Arcs are edges of the underlying
//! 4-valent graph: every arc is delimited at each crossing passage, so each
//! arc label appears exactly twice among crossing endpoints (once entering a
//! crossing, once leaving one). A component with no crossings is a single
//! free-loop arc that appears zero times.
//!
//! Orientation is implicit in the component arc sequences: the under-strand
//! always runs slot 0 -> slot 2, and the over-strand direction is recovered
//! from arc successor relations. A crossing is positive exactly when its
//! over-strand runs slot 3 -> slot 1.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// Arc (edge) identifier within one diagram.
pub type ArcId = u32;

/// Errors raised while building, validating, or parsing diagrams.
#[derive(Debug, thiserror::Error)]
pub enum DiagramError {
    #[error("arc {0} appears {1} times among crossing endpoints (expected 2, or 0 for a free loop)")]
    ArcUseCount(ArcId, usize),
    #[error("arc {0} is not part of any component")]
    UnassignedArc(ArcId),
    #[error("arc {0} listed in more than one component position")]
    DuplicateArc(ArcId),
    #[error("crossing {0}: under-strand must run from slot 0 to slot 2 along its component")]
    UnderStrandBroken(usize),
    #[error("crossing {0}: over-strand direction is inconsistent with the component orientations")]
    OverStrandBroken(usize),
    #[error("arc {0} has conflicting successor assignments")]
    SuccessorConflict(ArcId),
    #[error("crossing index {0} out of range")]
    CrossingIndex(usize),
    #[error("component index {0} out of range")]
    ComponentIndex(usize),
    #[error("component {0} cannot be doubled in place")]
    UndoublableComponent(usize),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// One crossing: arc labels counterclockwise from the incoming under-strand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing(pub [ArcId; 4]);

impl Crossing {
    /// Incoming under-strand arc.
    pub fn under_in(&self) -> ArcId {
        self.0[0]
    }
    /// Outgoing under-strand arc.
    pub fn under_out(&self) -> ArcId {
        self.0[2]
    }
}

/// An oriented link diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDiagram {
    name: String,
    crossings: Vec<Crossing>,
    /// Cyclic arc sequences, one per component, in traversal order.
    components: Vec<Vec<ArcId>>,
    /// Per crossing: slot (1 or 3) where the over-strand enters.
    over_in: Vec<u8>,
}

/// Sign of an oriented crossing.
pub type Sign = i8;

impl LinkDiagram {
    /// Builds and validates a diagram.
    pub fn new(
        name: impl Into<String>,
        crossings: Vec<Crossing>,
        components: Vec<Vec<ArcId>>,
    ) -> Result<Self, DiagramError> {
        let name = name.into();
        // Successor map from the component cycles.
        let mut succ: HashMap<ArcId, ArcId> = HashMap::new();
        let mut seen: HashSet<ArcId> = HashSet::new();
        for comp in &components {
            for (i, &a) in comp.iter().enumerate() {
                if !seen.insert(a) {
                    return Err(DiagramError::DuplicateArc(a));
                }
                succ.insert(a, comp[(i + 1) % comp.len()]);
            }
        }
        // Arc usage counts.
        let mut uses: HashMap<ArcId, usize> = HashMap::new();
        for x in &crossings {
            for &a in &x.0 {
                *uses.entry(a).or_insert(0) += 1;
                if !seen.contains(&a) {
                    return Err(DiagramError::UnassignedArc(a));
                }
            }
        }
        for comp in &components {
            let free = comp.len() == 1 && !uses.contains_key(&comp[0]);
            for &a in comp {
                let n = uses.get(&a).copied().unwrap_or(0);
                if !(n == 2 || (free && n == 0)) {
                    return Err(DiagramError::ArcUseCount(a, n));
                }
            }
        }
        let over_in = Self::derive_orientation(&crossings, &succ)?;
        Self::with_orientation(name, crossings, components, over_in)
    }

    /// Assembles a diagram whose over-strand directions are known by the
    /// caller (used by surgeries and generators, where deriving them from the
    /// arc data alone could be ambiguous for components that are never
    /// crossed under).
    pub(crate) fn with_orientation(
        name: String,
        crossings: Vec<Crossing>,
        components: Vec<Vec<ArcId>>,
        over_in: Vec<u8>,
    ) -> Result<Self, DiagramError> {
        assert_eq!(over_in.len(), crossings.len());
        let mut succ: HashMap<ArcId, ArcId> = HashMap::new();
        let mut seen: HashSet<ArcId> = HashSet::new();
        for comp in &components {
            for (i, &a) in comp.iter().enumerate() {
                if !seen.insert(a) {
                    return Err(DiagramError::DuplicateArc(a));
                }
                succ.insert(a, comp[(i + 1) % comp.len()]);
            }
        }
        // Check strand continuity and global uniqueness of in/out roles.
        let mut in_used: HashSet<ArcId> = HashSet::new();
        let mut out_used: HashSet<ArcId> = HashSet::new();
        let mut uses: HashMap<ArcId, usize> = HashMap::new();
        for (i, x) in crossings.iter().enumerate() {
            let [a, b, c, d] = x.0;
            for &arc in &x.0 {
                *uses.entry(arc).or_insert(0) += 1;
                if !seen.contains(&arc) {
                    return Err(DiagramError::UnassignedArc(arc));
                }
            }
            if succ.get(&a) != Some(&c) {
                return Err(DiagramError::UnderStrandBroken(i));
            }
            let (oin, oout) = if over_in[i] == 1 { (b, d) } else { (d, b) };
            if succ.get(&oin) != Some(&oout) {
                return Err(DiagramError::OverStrandBroken(i));
            }
            for arc in [a, oin] {
                if !in_used.insert(arc) {
                    return Err(DiagramError::SuccessorConflict(arc));
                }
            }
            for arc in [c, oout] {
                if !out_used.insert(arc) {
                    return Err(DiagramError::SuccessorConflict(arc));
                }
            }
        }
        for comp in &components {
            let free = comp.len() == 1 && !uses.contains_key(&comp[0]);
            for &a in comp {
                let n = uses.get(&a).copied().unwrap_or(0);
                if !(n == 2 || (free && n == 0)) {
                    return Err(DiagramError::ArcUseCount(a, n));
                }
                if !free && (!in_used.contains(&a) || !out_used.contains(&a)) {
                    return Err(DiagramError::SuccessorConflict(a));
                }
            }
        }
        Ok(Self {
            name,
            crossings,
            components,
            over_in,
        })
    }

    /// Determines every over-strand direction from the successor relation by
    /// constraint propagation: each arc of a crossing-bearing component must
    /// enter exactly one crossing and leave exactly one. When a component is
    /// never crossed under, the residual ambiguity is broken by convention
    /// (over-strand enters at slot 1 on the lowest-index unresolved crossing).
    fn derive_orientation(
        crossings: &[Crossing],
        succ: &HashMap<ArcId, ArcId>,
    ) -> Result<Vec<u8>, DiagramError> {
        let mut over_in: Vec<u8> = vec![0; crossings.len()];
        let mut in_used: HashSet<ArcId> = HashSet::new();
        let mut out_used: HashSet<ArcId> = HashSet::new();
        for (i, x) in crossings.iter().enumerate() {
            let [a, _, c, _] = x.0;
            if succ.get(&a) != Some(&c) {
                return Err(DiagramError::UnderStrandBroken(i));
            }
            in_used.insert(a);
            out_used.insert(c);
        }
        let mut pending: Vec<usize> = Vec::new();
        for (i, x) in crossings.iter().enumerate() {
            let [_, b, _, d] = x.0;
            let fwd = succ.get(&b) == Some(&d); // over runs b -> d (negative)
            let bwd = succ.get(&d) == Some(&b); // over runs d -> b (positive)
            match (fwd, bwd) {
                (true, false) => {
                    over_in[i] = 1;
                    in_used.insert(b);
                    out_used.insert(d);
                }
                (false, true) => {
                    over_in[i] = 3;
                    in_used.insert(d);
                    out_used.insert(b);
                }
                (true, true) => pending.push(i),
                (false, false) => return Err(DiagramError::OverStrandBroken(i)),
            }
        }
        // Propagate: an assignment is feasible only if the in/out roles it
        // claims are still free for those arcs.
        while !pending.is_empty() {
            let mut progressed = false;
            pending.retain(|&i| {
                let [_, b, _, d] = crossings[i].0;
                if over_in[i] != 0 {
                    return false;
                }
                let as_neg = !in_used.contains(&b) && !out_used.contains(&d);
                let as_pos = !in_used.contains(&d) && !out_used.contains(&b);
                let choice = match (as_neg, as_pos, b == d) {
                    (true, false, _) => Some(1),
                    (false, true, _) => Some(3),
                    _ => None,
                };
                if let Some(s) = choice {
                    over_in[i] = s;
                    let (oin, oout) = if s == 1 { (b, d) } else { (d, b) };
                    in_used.insert(oin);
                    out_used.insert(oout);
                    progressed = true;
                    false
                } else {
                    true
                }
            });
            if !progressed {
                if let Some(&i) = pending.first() {
                    let [_, b, _, d] = crossings[i].0;
                    if in_used.contains(&b) || out_used.contains(&d) {
                        return Err(DiagramError::OverStrandBroken(i));
                    }
                    over_in[i] = 1;
                    in_used.insert(b);
                    out_used.insert(d);
                    pending.remove(0);
                }
            }
        }
        Ok(over_in)
    }

    /// Diagram name.
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Renames the diagram in place.
    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn components(&self) -> &[Vec<ArcId>] {
        &self.components
    }

    pub fn n_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn n_components(&self) -> usize {
        self.components.len()
    }

    /// Slot (1 or 3) where the over-strand enters crossing `i`.
    pub fn over_in_slot(&self, i: usize) -> u8 {
        self.over_in[i]
    }

    /// Incoming over-strand arc of crossing `i`.
    pub fn over_in_arc(&self, i: usize) -> ArcId {
        self.crossings[i].0[self.over_in[i] as usize]
    }

    /// Outgoing over-strand arc of crossing `i`.
    pub fn over_out_arc(&self, i: usize) -> ArcId {
        self.crossings[i].0[(self.over_in[i] as usize + 2) % 4]
    }

    /// Sign of crossing `i`: `+1` when the over-strand runs slot 3 -> slot 1.
    pub fn sign(&self, i: usize) -> Sign {
        if self.over_in[i] == 3 {
            1
        } else {
            -1
        }
    }

    /// Component index owning an arc.
    pub fn component_of(&self, arc: ArcId) -> Option<usize> {
        self.components
            .iter()
            .position(|c| c.contains(&arc))
    }

    /// Precomputed arc -> component lookup for repeated queries.
    pub fn component_map(&self) -> HashMap<ArcId, usize> {
        let mut m = HashMap::new();
        for (i, comp) in self.components.iter().enumerate() {
            for &a in comp {
                m.insert(a, i);
            }
        }
        m
    }

    /// Writhe: sum of crossing signs.
    pub fn writhe(&self) -> i64 {
        (0..self.n_crossings()).map(|i| self.sign(i) as i64).sum()
    }

    /// Sum of signs over crossings where both strands belong to component `ci`.
    pub fn self_writhe(&self, ci: usize) -> i64 {
        let cm = self.component_map();
        (0..self.n_crossings())
            .filter(|&i| {
                cm[&self.crossings[i].under_in()] == ci && cm[&self.over_in_arc(i)] == ci
            })
            .map(|i| self.sign(i) as i64)
            .sum()
    }

    /// Linking number of two distinct components: half the signed count of
    /// crossings between them.
    pub fn linking_number(&self, ci: usize, cj: usize) -> Result<i64, DiagramError> {
        if ci >= self.n_components() {
            return Err(DiagramError::ComponentIndex(ci));
        }
        if cj >= self.n_components() {
            return Err(DiagramError::ComponentIndex(cj));
        }
        let cm = self.component_map();
        let mut total: i64 = 0;
        for i in 0..self.n_crossings() {
            let cu = cm[&self.crossings[i].under_in()];
            let co = cm[&self.over_in_arc(i)];
            if (cu, co) == (ci, cj) || (cu, co) == (cj, ci) {
                total += self.sign(i) as i64;
            }
        }
        debug_assert!(total % 2 == 0);
        Ok(total / 2)
    }

    /// Exchanges over- and under-strand at crossing `i`.
    pub fn switch_crossing(&self, i: usize) -> Result<Self, DiagramError> {
        if i >= self.n_crossings() {
            return Err(DiagramError::CrossingIndex(i));
        }
        let mut crossings = self.crossings.clone();
        let mut over_in = self.over_in.clone();
        let [a, b, c, d] = crossings[i].0;
        // Rotate so the old over-strand occupies slots 0 and 2; the old
        // under-strand becomes the over-strand with its direction kept.
        crossings[i] = if self.over_in[i] == 3 {
            Crossing([d, a, b, c])
        } else {
            Crossing([b, c, d, a])
        };
        over_in[i] = 4 - over_in[i];
        Self::with_orientation(
            self.name.clone(),
            crossings,
            self.components.clone(),
            over_in,
        )
    }

    /// Faces of the planar embedding described by the rotation data: for each
    /// crossing, the face touching each of its four corners (corner `i` lies
    /// between slots `i` and `i + 1`), together with the face count.
    /// Meaningful when [`surface_genus`](Self::surface_genus) is zero.
    pub fn corner_faces(&self) -> (Vec<[usize; 4]>, usize) {
        let n = self.n_crossings();
        let mut inc: HashMap<ArcId, Vec<(usize, usize)>> = HashMap::new();
        for (i, x) in self.crossings.iter().enumerate() {
            for (s, &a) in x.0.iter().enumerate() {
                inc.entry(a).or_default().push((i, s));
            }
        }
        let mut face_of = vec![[usize::MAX; 4]; n];
        let mut arcs: Vec<ArcId> = inc.keys().copied().collect();
        arcs.sort_unstable();
        let mut seen: HashSet<(ArcId, usize)> = HashSet::new();
        let mut faces = 0usize;
        for &a in &arcs {
            for head in 0..2 {
                if seen.contains(&(a, head)) {
                    continue;
                }
                let id = faces;
                faces += 1;
                let (mut arc, mut h) = (a, head);
                loop {
                    if !seen.insert((arc, h)) {
                        break;
                    }
                    let (ci, s) = inc[&arc][h];
                    face_of[ci][s] = id;
                    let s2 = (s + 1) % 4;
                    let next = self.crossings[ci].0[s2];
                    let here = inc[&next]
                        .iter()
                        .position(|&p| p == (ci, s2))
                        .expect("port present");
                    arc = next;
                    h = 1 - here;
                    if (arc, h) == (a, head) {
                        break;
                    }
                }
            }
        }
        (face_of, faces)
    }

    /// Re-records crossing `i` as seen from the other side of the plane:
    /// reverses its cyclic slot order and swaps over for under. Both halves
    /// flip the roles of the two smoothings, so every invariant computed from
    /// the diagram is unchanged, but the local rotation data is replaced by
    /// its mirror. Used by [`planarize`](Self::planarize) to repair diagrams
    /// whose combinatorics describe the right link through a non-planar
    /// detour.
    pub fn replumb_crossing(&self, i: usize) -> Result<Self, DiagramError> {
        if i >= self.n_crossings() {
            return Err(DiagramError::CrossingIndex(i));
        }
        let mut crossings = self.crossings.clone();
        let mut over_in = self.over_in.clone();
        let [a, b, c, d] = crossings[i].0;
        // Reflect ([a,d,c,b], over-in slot 4 - oi), then switch as in
        // `switch_crossing`; composed, the over-in slot index is unchanged.
        crossings[i] = if self.over_in[i] == 1 {
            Crossing([b, a, d, c])
        } else {
            Crossing([d, c, b, a])
        };
        let _ = &mut over_in;
        Self::with_orientation(
            self.name.clone(),
            crossings,
            self.components.clone(),
            over_in,
        )
    }

    /// Greedily re-records crossings through [`replumb_crossing`](
    /// Self::replumb_crossing) until the rotation data embeds in the plane
    /// (genus zero), returning the repaired diagram. Every invariant is
    /// unchanged by each step. Returns `None` if no sequence of single-step
    /// improvements reaches genus zero.
    pub fn planarize(&self) -> Option<Self> {
        let mut cur = self.clone();
        let mut g = cur.surface_genus();
        'outer: while g > 0 {
            let n = cur.n_crossings();
            for i in 0..n {
                let cand = cur.replumb_crossing(i).ok()?;
                let cg = cand.surface_genus();
                if cg < g {
                    cur = cand;
                    g = cg;
                    continue 'outer;
                }
            }
            // A mis-recorded lane usually spans several crossings whose
            // rotations only planarize together; fall back to pairs.
            for i in 0..n {
                let ci = cur.replumb_crossing(i).ok()?;
                for j in (i + 1)..n {
                    let cand = ci.replumb_crossing(j).ok()?;
                    let cg = cand.surface_genus();
                    if cg < g {
                        cur = cand;
                        g = cg;
                        continue 'outer;
                    }
                }
            }
            return None;
        }
        Some(cur)
    }

    /// Mirror image: every crossing switched.
    pub fn mirror(&self) -> Self {
        let mut out = self.clone();
        for i in 0..out.n_crossings() {
            out = out.switch_crossing(i).expect("valid index");
        }
        out.name = format!("{}!", self.name);
        out
    }

    /// Oriented smoothing of crossing `i`: both strands are reconnected
    /// respecting orientation (L_0 of the skein triple). Components are
    /// re-traced and arcs renumbered.
    pub fn smooth_oriented(&self, i: usize) -> Result<Self, DiagramError> {
        if i >= self.n_crossings() {
            return Err(DiagramError::CrossingIndex(i));
        }
        let mut b = Builder::new();
        for (j, x) in self.crossings.iter().enumerate() {
            if j != i {
                b.push_raw(x.0, self.over_in[j]);
            }
        }
        for comp in &self.components {
            if comp.len() == 1 && self.arc_is_free(comp[0]) {
                b.free_loops += 1;
            }
        }
        let x = self.crossings[i];
        b.merge(x.under_in(), self.over_out_arc(i));
        b.merge(self.over_in_arc(i), x.under_out());
        b.build(format!("{}_s{}", self.name, i))
    }

    /// Removes component `ci`, reconnecting every other strand that crossed it.
    pub fn delete_component(&self, ci: usize) -> Result<Self, DiagramError> {
        if ci >= self.n_components() {
            return Err(DiagramError::ComponentIndex(ci));
        }
        let cm = self.component_map();
        let mut b = Builder::new();
        for (j, x) in self.crossings.iter().enumerate() {
            let under_del = cm[&x.under_in()] == ci;
            let over_del = cm[&self.over_in_arc(j)] == ci;
            match (under_del, over_del) {
                (false, false) => b.push_raw(x.0, self.over_in[j]),
                (true, false) => b.merge(self.over_in_arc(j), self.over_out_arc(j)),
                (false, true) => b.merge(x.under_in(), x.under_out()),
                (true, true) => {}
            }
        }
        for (k, comp) in self.components.iter().enumerate() {
            if k != ci && comp.len() == 1 && self.arc_is_free(comp[0]) {
                b.free_loops += 1;
            }
        }
        b.build(format!("{}-c{}", self.name, ci))
    }

    fn arc_is_free(&self, a: ArcId) -> bool {
        !self.crossings.iter().any(|x| x.0.contains(&a))
    }

    /// Disjoint union; arcs of `other` are relabeled out of the way.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let offset = self
            .components
            .iter()
            .flatten()
            .copied()
            .max()
            .map_or(0, |m| m + 1);
        let mut crossings = self.crossings.clone();
        crossings.extend(
            other
                .crossings
                .iter()
                .map(|x| Crossing([x.0[0] + offset, x.0[1] + offset, x.0[2] + offset, x.0[3] + offset])),
        );
        let mut components = self.components.clone();
        components.extend(
            other
                .components
                .iter()
                .map(|c| c.iter().map(|a| a + offset).collect()),
        );
        let mut over_in = self.over_in.clone();
        over_in.extend_from_slice(&other.over_in);
        Self::with_orientation(
            format!("{}+{}", self.name, other.name),
            crossings,
            components,
            over_in,
        )
        .expect("disjoint union of valid diagrams is valid")
    }

    /// Canonical code: invariant under arc renumbering, crossing reordering,
    /// and component listing order. Two diagrams have equal codes iff they are
    /// identical up to those relabelings.
    pub fn canonical_code(&self) -> String {
        // Incidence: arc -> (crossing, slot) pairs.
        let mut inc: HashMap<ArcId, Vec<(usize, usize)>> = HashMap::new();
        for (i, x) in self.crossings.iter().enumerate() {
            for (s, &a) in x.0.iter().enumerate() {
                inc.entry(a).or_default().push((i, s));
            }
        }
        let n = self.n_crossings();
        let mut piece_codes: Vec<Vec<i64>> = Vec::new();
        let mut assigned: Vec<bool> = vec![false; n];
        // Connected pieces of the crossing graph, each canonicalized by the
        // minimum over its possible BFS roots.
        for seed in 0..n {
            if assigned[seed] {
                continue;
            }
            let piece = self.collect_piece(seed, &inc);
            for &i in &piece {
                assigned[i] = true;
            }
            let best = piece
                .iter()
                .map(|&root| self.bfs_code(root, &inc))
                .min()
                .expect("non-empty piece");
            piece_codes.push(best);
        }
        piece_codes.sort();
        let free = self
            .components
            .iter()
            .filter(|c| c.len() == 1 && self.arc_is_free(c[0]))
            .count();
        let mut out = format!("L{free}|");
        for pc in piece_codes {
            for v in pc {
                let _ = write!(out, "{v},");
            }
            out.push('|');
        }
        out
    }

    /// Genus of the closed orientable surface on which the stored crossing
    /// data embeds with the counterclockwise slot order respected: `0` means
    /// the diagram is realizable in the plane. Crossing-free circles are
    /// ignored.
    pub fn surface_genus(&self) -> u32 {
        let n = self.n_crossings();
        if n == 0 {
            return 0;
        }
        // Ports: arc -> its two (crossing, slot) incidences.
        let mut inc: HashMap<ArcId, Vec<(usize, usize)>> = HashMap::new();
        for (i, x) in self.crossings.iter().enumerate() {
            for (s, &a) in x.0.iter().enumerate() {
                inc.entry(a).or_default().push((i, s));
            }
        }
        // Directed edge = (arc, index of the port it heads into). Face
        // tracing: arrive at a port, turn to the counterclockwise-next slot,
        // leave along the arc found there.
        let arcs: Vec<ArcId> = inc.keys().copied().collect();
        let mut seen: HashSet<(ArcId, usize)> = HashSet::new();
        let mut faces = 0u64;
        for &a in &arcs {
            for head in 0..2 {
                if seen.contains(&(a, head)) {
                    continue;
                }
                faces += 1;
                let (mut arc, mut h) = (a, head);
                loop {
                    if !seen.insert((arc, h)) {
                        break;
                    }
                    let (ci, s) = inc[&arc][h];
                    let s2 = (s + 1) % 4;
                    let next = self.crossings[ci].0[s2];
                    let ports = &inc[&next];
                    // Leave through the other port of `next`, or loop back
                    // through the same one if both of its ports sit here.
                    let here = ports
                        .iter()
                        .position(|&p| p == (ci, s2))
                        .expect("port present");
                    let nh = 1 - here;
                    arc = next;
                    h = nh;
                    if (arc, h) == (a, head) {
                        break;
                    }
                }
            }
        }
        // Connected pieces of the crossing graph.
        let mut pieces = 0u64;
        let mut assigned = vec![false; n];
        for seed in 0..n {
            if !assigned[seed] {
                pieces += 1;
                for i in self.collect_piece(seed, &inc) {
                    assigned[i] = true;
                }
            }
        }
        // V - E + F = 2c - 2g with V = n, E = 2n on each piece summed.
        let v = n as i64;
        let e = 2 * v;
        let chi = v - e + faces as i64;
        let g2 = 2 * pieces as i64 - chi;
        debug_assert!(g2 >= 0 && g2 % 2 == 0, "Euler bookkeeping");
        (g2 / 2) as u32
    }

    fn collect_piece(&self, seed: usize, inc: &HashMap<ArcId, Vec<(usize, usize)>>) -> Vec<usize> {
        let mut seen = HashSet::from([seed]);
        let mut stack = vec![seed];
        let mut out = Vec::new();
        while let Some(i) = stack.pop() {
            out.push(i);
            for &a in &self.crossings[i].0 {
                for &(j, _) in &inc[&a] {
                    if seen.insert(j) {
                        stack.push(j);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn bfs_code(&self, root: usize, inc: &HashMap<ArcId, Vec<(usize, usize)>>) -> Vec<i64> {
        let mut order: Vec<usize> = vec![root];
        let mut pos: HashMap<usize, usize> = HashMap::from([(root, 0)]);
        let mut relabel: HashMap<ArcId, i64> = HashMap::new();
        let mut next_arc = 0i64;
        let mut code = Vec::new();
        let mut qi = 0;
        while qi < order.len() {
            let i = order[qi];
            qi += 1;
            code.push(self.over_in[i] as i64);
            for &a in &self.crossings[i].0 {
                let label = *relabel.entry(a).or_insert_with(|| {
                    next_arc += 1;
                    next_arc
                });
                code.push(label);
                for &(j, _) in &inc[&a] {
                    if !pos.contains_key(&j) {
                        pos.insert(j, order.len());
                        order.push(j);
                    }
                }
            }
        }
        code
    }

    /// Renumbers arcs and reorders components deterministically.
    pub fn renumbered(&self) -> Self {
        let mut b = Builder::new();
        for (j, x) in self.crossings.iter().enumerate() {
            b.push_raw(x.0, self.over_in[j]);
        }
        for comp in &self.components {
            if comp.len() == 1 && self.arc_is_free(comp[0]) {
                b.free_loops += 1;
            }
        }
        b.build(self.name.clone()).expect("renumbering is valid")
    }

    /// Reduces the diagram by Reidemeister I and II moves until none apply.
    /// The link type is unchanged; writhe may change (R1).
    pub fn simplify(&self) -> Self {
        let mut d = self.clone();
        loop {
            if let Some(next) = d.reduce_once() {
                d = next;
            } else {
                break;
            }
        }
        d.set_name(format!("{}~", self.name));
        d
    }

    fn reduce_once(&self) -> Option<Self> {
        // R1: an arc occupying two adjacent slots of one crossing.
        for (i, x) in self.crossings.iter().enumerate() {
            for s in 0..4 {
                if x.0[s] == x.0[(s + 1) % 4] {
                    let p = x.0[(s + 2) % 4];
                    let q = x.0[(s + 3) % 4];
                    let mut b = Builder::new();
                    for (j, y) in self.crossings.iter().enumerate() {
                        if j != i {
                            b.push_raw(y.0, self.over_in[j]);
                        }
                    }
                    for comp in &self.components {
                        if comp.len() == 1 && self.arc_is_free(comp[0]) {
                            b.free_loops += 1;
                        }
                    }
                    b.merge(p, q);
                    return Some(b.build(self.name.clone()).expect("R1 keeps validity"));
                }
            }
        }
        // R2: two crossings joined by a bigon whose over-arc is over at both
        // ends and whose under-arc is under at both ends.
        for i in 0..self.n_crossings() {
            for j in (i + 1)..self.n_crossings() {
                if let Some(d) = self.try_r2(i, j) {
                    return Some(d);
                }
            }
        }
        None
    }

    fn try_r2(&self, i: usize, j: usize) -> Option<Self> {
        let xi = self.crossings[i].0;
        let xj = self.crossings[j].0;
        let shared: Vec<ArcId> = xi
            .iter()
            .copied()
            .filter(|a| xj.contains(a))
            .collect();
        if shared.len() != 2 || shared[0] == shared[1] {
            return None;
        }
        let slot = |x: &[ArcId; 4], a: ArcId| x.iter().position(|&v| v == a).unwrap();
        let over = |s: usize| s % 2 == 1;
        let (p, q) = (shared[0], shared[1]);
        let (si_p, sj_p) = (slot(&xi, p), slot(&xj, p));
        let (si_q, sj_q) = (slot(&xi, q), slot(&xj, q));
        // Adjacent slots at both crossings (bigon geometry).
        let adj = |a: usize, b: usize| (a + 1) % 4 == b || (b + 1) % 4 == a;
        if !adj(si_p, si_q) || !adj(sj_p, sj_q) {
            return None;
        }
        // One shared arc over at both ends, the other under at both ends.
        let over_both = |si: usize, sj: usize| over(si) && over(sj);
        let under_both = |si: usize, sj: usize| !over(si) && !over(sj);
        let ok = (over_both(si_p, sj_p) && under_both(si_q, sj_q))
            || (over_both(si_q, sj_q) && under_both(si_p, sj_p));
        if !ok {
            return None;
        }
        // Opposite signs guard against same-sign twist regions.
        if self.sign(i) == self.sign(j) {
            return None;
        }
        // Reconnect the four loose ends: on each strand, merge the non-shared
        // arcs of the two crossings.
        let mut b = Builder::new();
        for (k, y) in self.crossings.iter().enumerate() {
            if k != i && k != j {
                b.push_raw(y.0, self.over_in[k]);
            }
        }
        for comp in &self.components {
            if comp.len() == 1 && self.arc_is_free(comp[0]) {
                b.free_loops += 1;
            }
        }
        // Under-strand of i: entering and leaving arcs not shared pair up with
        // the corresponding ends at j, and likewise for the over-strand.
        let ends = |x: &LinkDiagram, k: usize| {
            let c = x.crossings[k];
            [
                (c.under_in(), true),
                (c.under_out(), false),
                (x.over_in_arc(k), true),
                (x.over_out_arc(k), false),
            ]
        };
        let loose_i: Vec<(ArcId, bool)> = ends(self, i)
            .into_iter()
            .filter(|(a, _)| *a != p && *a != q)
            .collect();
        let loose_j: Vec<(ArcId, bool)> = ends(self, j)
            .into_iter()
            .filter(|(a, _)| *a != p && *a != q)
            .collect();
        if loose_i.len() != 2 || loose_j.len() != 2 {
            return None; // shared arcs also carry loose ends; skip exotic cases
        }
        let cm = self.component_map();
        // Match loose ends by strand: an incoming end at one crossing joins an
        // outgoing end at the other on the same component through p or q.
        let mut merged = Vec::new();
        for &(a, a_in) in &loose_i {
            let partner = loose_j
                .iter()
                .find(|&&(bq, b_in)| b_in != a_in && cm[&bq] == cm[&a] && !merged.contains(&bq));
            match partner {
                Some(&(bq, _)) => {
                    merged.push(bq);
                    b.merge(a, bq);
                }
                None => return None,
            }
        }
        b.build(self.name.clone()).ok()
    }

    // ------------------------------------------------------------------
    // Text and JSON serialization
    // ------------------------------------------------------------------

    /// Writes the line-based PD text format.
    pub fn to_pd_text(&self) -> String {
        let mut out = format!("link {} components {}\n", self.name, self.n_components());
        for (i, comp) in self.components.iter().enumerate() {
            let arcs: Vec<String> = comp.iter().map(|a| a.to_string()).collect();
            let _ = writeln!(out, "comp {}: {}", i, arcs.join(" "));
        }
        for x in &self.crossings {
            let _ = writeln!(out, "X({},{},{},{})", x.0[0], x.0[1], x.0[2], x.0[3]);
        }
        out
    }

    /// Parses the line-based PD text format produced by [`Self::to_pd_text`].
    pub fn parse_pd(text: &str) -> Result<Self, DiagramError> {
        let mut name = String::from("unnamed");
        let mut declared: Option<usize> = None;
        let mut components: Vec<Vec<ArcId>> = Vec::new();
        let mut crossings: Vec<Crossing> = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let err = |msg: &str| DiagramError::Parse {
                line: ln + 1,
                msg: msg.to_string(),
            };
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("link ") {
                let mut parts = rest.split_whitespace().collect::<Vec<_>>();
                if parts.len() < 3 || parts[parts.len() - 2] != "components" {
                    return Err(err("expected `link <name> components <m>`"));
                }
                declared = Some(
                    parts
                        .pop()
                        .unwrap()
                        .parse()
                        .map_err(|_| err("bad component count"))?,
                );
                parts.pop();
                name = parts.join(" ");
            } else if let Some(rest) = line.strip_prefix("comp ") {
                let (_, arcs) = rest
                    .split_once(':')
                    .ok_or_else(|| err("expected `comp <i>: arcs...`"))?;
                let comp: Result<Vec<ArcId>, _> =
                    arcs.split_whitespace().map(|t| t.parse()).collect();
                components.push(comp.map_err(|_| err("bad arc id"))?);
            } else if let Some(rest) = line.strip_prefix("X(") {
                let inner = rest
                    .strip_suffix(')')
                    .ok_or_else(|| err("unterminated crossing"))?;
                let vals: Result<Vec<ArcId>, _> =
                    inner.split(',').map(|t| t.trim().parse()).collect();
                let vals = vals.map_err(|_| err("bad crossing arc id"))?;
                if vals.len() != 4 {
                    return Err(err("crossing needs exactly 4 arcs"));
                }
                crossings.push(Crossing([vals[0], vals[1], vals[2], vals[3]]));
            } else {
                return Err(err("unrecognized line"));
            }
        }
        if let Some(m) = declared {
            if m != components.len() {
                return Err(DiagramError::Parse {
                    line: 0,
                    msg: format!("declared {m} components, found {}", components.len()),
                });
            }
        }
        Self::new(name, crossings, components)
    }

    /// JSON mirror of the PD format.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "name": self.name,
            "components": self.components,
            "crossings": self.crossings.iter().map(|x| x.0).collect::<Vec<_>>(),
        })
    }

    /// Parses the JSON mirror of the PD format.
    pub fn from_json(v: &serde_json::Value) -> Result<Self, DiagramError> {
        let err = |msg: &str| DiagramError::Parse {
            line: 0,
            msg: msg.to_string(),
        };
        let name = v["name"].as_str().unwrap_or("unnamed").to_string();
        let components: Vec<Vec<ArcId>> =
            serde_json::from_value(v["components"].clone()).map_err(|_| err("bad components"))?;
        let raw: Vec<[ArcId; 4]> =
            serde_json::from_value(v["crossings"].clone()).map_err(|_| err("bad crossings"))?;
        Self::new(name, raw.into_iter().map(Crossing).collect(), components)
    }
}

/// Incremental diagram assembler used by surgeries and family generators.
///
/// Crossings are pushed with arbitrary arc labels plus the slot where the
/// over-strand enters; `merge` declares two labels to be the same arc.
/// `build` resolves merges, re-traces components, and renumbers arcs.
#[derive(Default)]
pub(crate) struct Builder {
    crossings: Vec<([ArcId; 4], u8)>,
    merges: Vec<(ArcId, ArcId)>,
    pub(crate) free_loops: usize,
}

impl Builder {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    pub(crate) fn push_raw(&mut self, tuple: [ArcId; 4], over_in: u8) {
        debug_assert!(over_in == 1 || over_in == 3);
        self.crossings.push((tuple, over_in));
    }

    /// Adds a crossing from strand data: under runs `u_in -> u_out`, over runs
    /// `o_in -> o_out`, and `over_in_slot` (1 or 3) records the chirality,
    /// i.e. on which side of the under-strand the over-strand enters.
    pub(crate) fn push_crossing(
        &mut self,
        u_in: ArcId,
        o_in: ArcId,
        u_out: ArcId,
        o_out: ArcId,
        over_in_slot: u8,
    ) {
        let tuple = if over_in_slot == 1 {
            [u_in, o_in, u_out, o_out]
        } else {
            [u_in, o_out, u_out, o_in]
        };
        self.push_raw(tuple, over_in_slot);
    }

    pub(crate) fn merge(&mut self, a: ArcId, b: ArcId) {
        self.merges.push((a, b));
    }

    pub(crate) fn build(self, name: impl Into<String>) -> Result<LinkDiagram, DiagramError> {
        self.build_with_map(name).map(|(d, _)| d)
    }

    /// Like [`Self::build`], also returning the map from input arc labels to
    /// final renumbered labels (via each label's merge representative).
    pub(crate) fn build_with_map(
        self,
        name: impl Into<String>,
    ) -> Result<(LinkDiagram, HashMap<ArcId, ArcId>), DiagramError> {
        // Union-find over every mentioned label.
        let mut parent: HashMap<ArcId, ArcId> = HashMap::new();
        fn find(parent: &mut HashMap<ArcId, ArcId>, mut x: ArcId) -> ArcId {
            loop {
                let p = *parent.entry(x).or_insert(x);
                if p == x {
                    return x;
                }
                let gp = *parent.entry(p).or_insert(p);
                parent.insert(x, gp);
                x = gp;
            }
        }
        for (tuple, _) in &self.crossings {
            for &a in tuple {
                find(&mut parent, a);
            }
        }
        let mut merged_classes: HashSet<ArcId> = HashSet::new();
        for &(a, b) in &self.merges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            merged_classes.insert(ra.min(rb));
            if ra != rb {
                parent.insert(ra.max(rb), ra.min(rb));
            }
        }
        // Successor relation on representative labels.
        let mut next: BTreeMap<ArcId, ArcId> = BTreeMap::new();
        let set_next = |from: ArcId, to: ArcId, next: &mut BTreeMap<ArcId, ArcId>| {
            if next.insert(from, to).is_some_and(|old| old != to) {
                Err(DiagramError::SuccessorConflict(from))
            } else {
                Ok(())
            }
        };
        let mut reps: Vec<([ArcId; 4], u8)> = Vec::new();
        for (tuple, oi) in &self.crossings {
            let t = [
                find(&mut parent, tuple[0]),
                find(&mut parent, tuple[1]),
                find(&mut parent, tuple[2]),
                find(&mut parent, tuple[3]),
            ];
            reps.push((t, *oi));
            set_next(t[0], t[2], &mut next)?;
            let (oin, oout) = if *oi == 1 { (t[1], t[3]) } else { (t[3], t[1]) };
            set_next(oin, oout, &mut next)?;
        }
        // Arcs that were merged into classes touching no crossing are free loops.
        let mut free_loops = self.free_loops;
        let in_crossings: HashSet<ArcId> = reps.iter().flat_map(|(t, _)| t.iter().copied()).collect();
        let mut counted: HashSet<ArcId> = HashSet::new();
        for &c in &merged_classes {
            let r = find(&mut parent, c);
            if !in_crossings.contains(&r) && counted.insert(r) {
                free_loops += 1;
            }
        }
        // Trace cycles of `next` in deterministic order.
        let mut components: Vec<Vec<ArcId>> = Vec::new();
        let mut visited: HashSet<ArcId> = HashSet::new();
        let starts: Vec<ArcId> = next.keys().copied().collect();
        for s in starts {
            if visited.contains(&s) {
                continue;
            }
            let mut cyc = Vec::new();
            let mut cur = s;
            loop {
                if !visited.insert(cur) {
                    return Err(DiagramError::SuccessorConflict(cur));
                }
                cyc.push(cur);
                cur = *next
                    .get(&cur)
                    .ok_or(DiagramError::SuccessorConflict(cur))?;
                if cur == s {
                    break;
                }
            }
            components.push(cyc);
        }
        // Renumber arcs 0.. along components; free loops get fresh arcs.
        let mut newid: HashMap<ArcId, ArcId> = HashMap::new();
        let mut counter: ArcId = 0;
        let mut new_components: Vec<Vec<ArcId>> = Vec::new();
        for comp in &components {
            let mut nc = Vec::with_capacity(comp.len());
            for &a in comp {
                newid.insert(a, counter);
                nc.push(counter);
                counter += 1;
            }
            new_components.push(nc);
        }
        for _ in 0..free_loops {
            new_components.push(vec![counter]);
            counter += 1;
        }
        let crossings: Vec<Crossing> = reps
            .iter()
            .map(|(t, _)| Crossing([newid[&t[0]], newid[&t[1]], newid[&t[2]], newid[&t[3]]]))
            .collect();
        let over_in: Vec<u8> = reps.iter().map(|&(_, oi)| oi).collect();
        let diagram =
            LinkDiagram::with_orientation(name.into(), crossings, new_components, over_in)?;
        // Map every input label through its representative to the final id.
        let mut label_map: HashMap<ArcId, ArcId> = HashMap::new();
        let labels: Vec<ArcId> = parent.keys().copied().collect();
        for lbl in labels {
            let rep = find(&mut parent, lbl);
            if let Some(&n) = newid.get(&rep) {
                label_map.insert(lbl, n);
            }
        }
        Ok((diagram, label_map))
    }
}

/// Skein triple at one crossing: the diagram itself, the crossing switched,
/// and the oriented smoothing.
#[derive(Debug, Clone)]
pub struct SkeinTriple {
    /// Original diagram (either the positive or negative member).
    pub original: LinkDiagram,
    /// Crossing switched.
    pub switched: LinkDiagram,
    /// Oriented smoothing (L_0).
    pub smoothed: LinkDiagram,
    /// Sign of the crossing in `original`.
    pub sign: Sign,
}

impl SkeinTriple {
    /// Builds the triple at crossing `i` of `d`.
    pub fn at(d: &LinkDiagram, i: usize) -> Result<Self, DiagramError> {
        Ok(Self {
            original: d.clone(),
            switched: d.switch_crossing(i)?,
            smoothed: d.smooth_oriented(i)?,
            sign: d.sign(i),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Left-handed trefoil (standard PD, all crossings negative here).
    pub(crate) fn trefoil_left() -> LinkDiagram {
        LinkDiagram::new(
            "trefoil_left",
            vec![
                Crossing([1, 4, 2, 5]),
                Crossing([3, 6, 4, 1]),
                Crossing([5, 2, 6, 3]),
            ],
            vec![vec![1, 2, 3, 4, 5, 6]],
        )
        .unwrap()
    }

    fn hopf_neg() -> LinkDiagram {
        // Two crossings; validation orients them; this encoding is writhe -2.
        LinkDiagram::new(
            "hopf",
            vec![Crossing([1, 4, 2, 3]), Crossing([3, 2, 4, 1])],
            vec![vec![1, 2], vec![3, 4]],
        )
        .unwrap()
    }

    #[test]
    fn trefoil_validates_with_writhe_minus_3() {
        let d = trefoil_left();
        assert_eq!(d.n_crossings(), 3);
        assert_eq!(d.writhe(), -3);
        assert_eq!(d.self_writhe(0), -3);
    }

    #[test]
    fn hopf_linking_number() {
        let h = hopf_neg();
        assert_eq!(h.writhe(), -2);
        assert_eq!(h.linking_number(0, 1).unwrap(), -1);
        assert_eq!(h.mirror().linking_number(0, 1).unwrap(), 1);
    }

    #[test]
    fn switch_flips_sign_and_is_involutive() {
        let d = trefoil_left();
        let s = d.switch_crossing(1).unwrap();
        assert_eq!(s.sign(1), 1);
        assert_eq!(s.writhe(), -1);
        let back = s.switch_crossing(1).unwrap();
        assert_eq!(back.canonical_code(), d.canonical_code());
    }

    #[test]
    fn mirror_negates_writhe() {
        let d = trefoil_left();
        assert_eq!(d.mirror().writhe(), 3);
    }

    #[test]
    fn smooth_changes_component_count_by_one() {
        let d = trefoil_left();
        let s = d.smooth_oriented(0).unwrap();
        assert_eq!(s.n_components(), 2);
        assert_eq!(s.n_crossings(), 2);
        let h = hopf_neg();
        let s = h.smooth_oriented(0).unwrap();
        assert_eq!(s.n_components(), 1);
    }

    #[test]
    fn smoothing_hopf_twice_leaves_free_loop() {
        let h = hopf_neg();
        let once = h.smooth_oriented(0).unwrap();
        let twice = once.smooth_oriented(0).unwrap();
        assert_eq!(twice.n_crossings(), 0);
        assert_eq!(twice.n_components(), 2);
    }

    #[test]
    fn delete_component_of_hopf_gives_unknot() {
        let h = hopf_neg();
        let u = h.delete_component(0).unwrap();
        assert_eq!(u.n_components(), 1);
        assert_eq!(u.n_crossings(), 0);
    }

    #[test]
    fn canonical_code_invariant_under_relabeling() {
        let d = trefoil_left();
        // Same knot, arcs shifted by 10 and crossings listed in another order.
        let shifted = LinkDiagram::new(
            "shifted",
            vec![
                Crossing([13, 16, 14, 11]),
                Crossing([15, 12, 16, 13]),
                Crossing([11, 14, 12, 15]),
            ],
            vec![vec![11, 12, 13, 14, 15, 16]],
        )
        .unwrap();
        assert_eq!(d.canonical_code(), shifted.canonical_code());
        assert_ne!(d.canonical_code(), d.mirror().canonical_code());
    }

    #[test]
    fn disjoint_union_counts() {
        let d = trefoil_left().disjoint_union(&hopf_neg());
        assert_eq!(d.n_components(), 3);
        assert_eq!(d.n_crossings(), 5);
        assert_eq!(d.writhe(), -5);
    }

    #[test]
    fn pd_text_round_trip() {
        for d in [trefoil_left(), hopf_neg()] {
            let txt = d.to_pd_text();
            let back = LinkDiagram::parse_pd(&txt).unwrap();
            assert_eq!(back.canonical_code(), d.canonical_code());
            let js = d.to_json();
            let back = LinkDiagram::from_json(&js).unwrap();
            assert_eq!(back.canonical_code(), d.canonical_code());
        }
    }

    #[test]
    fn invalid_diagrams_rejected() {
        // Broken under-strand: component listed against the crossing data.
        let r = LinkDiagram::new(
            "bad",
            vec![
                Crossing([1, 4, 2, 5]),
                Crossing([3, 6, 4, 1]),
                Crossing([5, 2, 6, 3]),
            ],
            vec![vec![6, 5, 4, 3, 2, 1]],
        );
        assert!(r.is_err());
        // Arc used once.
        let r = LinkDiagram::new(
            "bad2",
            vec![Crossing([1, 4, 2, 5])],
            vec![vec![1, 2], vec![4, 5]],
        );
        assert!(r.is_err());
    }

    #[test]
    fn kink_orientation_disambiguation() {
        // One-crossing unknot: arcs 1, 2; tuple (1,2,2,1) is a negative kink.
        let d = LinkDiagram::new(
            "kink",
            vec![Crossing([1, 2, 2, 1])],
            vec![vec![1, 2]],
        )
        .unwrap();
        assert_eq!(d.writhe(), -1);
        // The positive kink.
        let d = LinkDiagram::new(
            "kink+",
            vec![Crossing([1, 1, 2, 2])],
            vec![vec![1, 2]],
        )
        .unwrap();
        assert_eq!(d.writhe(), 1);
    }

    #[test]
    fn simplify_removes_kinks_and_bigons() {
        // Trefoil with an extra positive kink spliced into arc 2: the strand
        // now runs 2 -> (kink under) -> 8 -> (kink over) -> 7.
        let d = LinkDiagram::new(
            "kinked",
            vec![
                Crossing([1, 4, 2, 5]),
                Crossing([3, 6, 4, 1]),
                Crossing([5, 7, 6, 3]),
                Crossing([2, 7, 8, 8]),
            ],
            vec![vec![1, 2, 8, 7, 3, 4, 5, 6]],
        );
        let d = d.unwrap();
        let s = d.simplify();
        assert_eq!(s.n_crossings(), 3);
        assert_eq!(s.writhe(), -3);
    }

    #[test]
    fn skein_triple_shapes() {
        let d = trefoil_left();
        let t = SkeinTriple::at(&d, 0).unwrap();
        assert_eq!(t.sign, -1);
        assert_eq!(t.switched.n_crossings(), 3);
        assert_eq!(t.smoothed.n_crossings(), 2);
    }
}
