//! KT5 Kripke frames, epistemic models over positional profiles, the
//! knowledge operators, and the (strong) rationality predicate.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::arena::{Arena, PlayerId};
use crate::error::{Error, Result};
use crate::exec::Config;
use crate::objectives::{winner_mask, ObjectiveProfile};
use crate::strategy::{PositionalProfile, ProfileSpace};

/// Worlds plus one partition of the worlds per player.
///
/// Storing partitions makes every relation reflexive, symmetric and
/// transitive by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KripkeFrame {
    worlds: Vec<String>,
    /// `class_of[p][w]`: class id of world `w` for player `p`, numbered by first appearance.
    class_of: Vec<Vec<usize>>,
}

fn normalize(ids: &[usize]) -> Vec<usize> {
    let mut remap = HashMap::new();
    ids.iter()
        .map(|id| {
            let next = remap.len();
            *remap.entry(*id).or_insert(next)
        })
        .collect()
}

impl KripkeFrame {
    /// Frame from per-world class labels (any labels; equal label means same class).
    pub fn from_labels(worlds: Vec<String>, labels: Vec<Vec<usize>>) -> Result<Self> {
        for (p, l) in labels.iter().enumerate() {
            if l.len() != worlds.len() {
                return Err(Error::NotAnEquivalence(p));
            }
        }
        check_unique(&worlds)?;
        Ok(Self {
            class_of: labels.iter().map(|l| normalize(l)).collect(),
            worlds,
        })
    }

    /// Frame from explicit classes; worlds not listed for a player form singleton classes.
    /// Overlapping classes are rejected.
    pub fn from_classes(worlds: Vec<String>, classes: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        check_unique(&worlds)?;
        let n = worlds.len();
        let mut labels = Vec::with_capacity(classes.len());
        for (p, cls) in classes.iter().enumerate() {
            let mut label = vec![usize::MAX; n];
            for (c, members) in cls.iter().enumerate() {
                for &w in members {
                    if w >= n {
                        return Err(Error::EventOutOfFrame);
                    }
                    if label[w] != usize::MAX && label[w] != c {
                        return Err(Error::NotAnEquivalence(p));
                    }
                    label[w] = c;
                }
            }
            let listed = cls.len();
            for (w, l) in label.iter_mut().enumerate() {
                if *l == usize::MAX {
                    *l = listed + w;
                }
            }
            labels.push(label);
        }
        Self::from_labels(worlds, labels)
    }

    /// Frame from raw relations given as pairs; each must be an equivalence relation.
    pub fn from_relations(
        worlds: Vec<String>,
        relations: Vec<Vec<(usize, usize)>>,
    ) -> Result<Self> {
        let n = worlds.len();
        let mut labels = Vec::with_capacity(relations.len());
        for (p, rel) in relations.iter().enumerate() {
            let mut m = vec![vec![false; n]; n];
            for &(a, b) in rel {
                if a >= n || b >= n {
                    return Err(Error::EventOutOfFrame);
                }
                m[a][b] = true;
            }
            let reflexive = (0..n).all(|a| m[a][a]);
            let symmetric = (0..n).all(|a| (0..n).all(|b| !m[a][b] || m[b][a]));
            let transitive =
                (0..n).all(|a| (0..n).all(|b| !m[a][b] || (0..n).all(|c| !m[b][c] || m[a][c])));
            if !(reflexive && symmetric && transitive) {
                return Err(Error::NotAnEquivalence(p));
            }
            labels.push((0..n).map(|a| (0..n).find(|&b| m[a][b]).unwrap()).collect());
        }
        Self::from_labels(worlds, labels)
    }

    pub fn num_worlds(&self) -> usize {
        self.worlds.len()
    }

    pub fn num_players(&self) -> usize {
        self.class_of.len()
    }

    pub fn world_name(&self, w: usize) -> &str {
        &self.worlds[w]
    }

    pub fn world(&self, name: &str) -> Option<usize> {
        self.worlds.iter().position(|x| x == name)
    }

    pub fn world_names(&self) -> &[String] {
        &self.worlds
    }

    pub fn class_id(&self, p: PlayerId, w: usize) -> usize {
        self.class_of[p.0][w]
    }

    /// `R_p(w)`, in world order.
    pub fn class(&self, p: PlayerId, w: usize) -> Vec<usize> {
        let c = self.class_of[p.0][w];
        (0..self.num_worlds())
            .filter(|&x| self.class_of[p.0][x] == c)
            .collect()
    }

    /// Classes of player `p`, each in world order, ordered by first member.
    pub fn classes(&self, p: PlayerId) -> Vec<Vec<usize>> {
        let labels = &self.class_of[p.0];
        let count = labels.iter().copied().max().map_or(0, |m| m + 1);
        let mut out = vec![Vec::new(); count];
        for (w, &c) in labels.iter().enumerate() {
            out[c].push(w);
        }
        out
    }

    pub fn related(&self, p: PlayerId, a: usize, b: usize) -> bool {
        self.class_of[p.0][a] == self.class_of[p.0][b]
    }

    /// Component labels of `R⁺`, the transitive closure of the union of all relations.
    pub fn reach_components(&self) -> Vec<usize> {
        let n = self.num_worlds();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        for labels in &self.class_of {
            let mut first: HashMap<usize, usize> = HashMap::new();
            for (w, &c) in labels.iter().enumerate() {
                match first.get(&c) {
                    Some(&rep) => {
                        let (a, b) = (find(&mut parent, rep), find(&mut parent, w));
                        if a != b {
                            parent[a.max(b)] = a.min(b);
                        }
                    }
                    None => {
                        first.insert(c, w);
                    }
                }
            }
        }
        let roots: Vec<usize> = (0..n).map(|w| find(&mut parent, w)).collect();
        normalize(&roots)
    }
}

fn check_unique(worlds: &[String]) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for w in worlds {
        if !seen.insert(w) {
            return Err(Error::DuplicateWorld(w.clone()));
        }
    }
    Ok(())
}

/// A set of worlds of a frame.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Event {
    mask: Vec<bool>,
}

impl Event {
    pub fn empty(frame: &KripkeFrame) -> Self {
        Self {
            mask: vec![false; frame.num_worlds()],
        }
    }

    pub fn full(frame: &KripkeFrame) -> Self {
        Self {
            mask: vec![true; frame.num_worlds()],
        }
    }

    pub fn from_worlds(
        frame: &KripkeFrame,
        worlds: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let mut e = Self::empty(frame);
        for w in worlds {
            if w >= e.mask.len() {
                return Err(Error::EventOutOfFrame);
            }
            e.mask[w] = true;
        }
        Ok(e)
    }

    pub fn from_mask(mask: Vec<bool>) -> Self {
        Self { mask }
    }

    pub fn contains(&self, w: usize) -> bool {
        self.mask.get(w).copied().unwrap_or(false)
    }

    pub fn worlds(&self) -> Vec<usize> {
        (0..self.mask.len()).filter(|&w| self.mask[w]).collect()
    }

    pub fn len(&self) -> usize {
        self.mask.iter().filter(|b| **b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_subset(&self, other: &Event) -> bool {
        self.mask.iter().zip(&other.mask).all(|(a, b)| !a || *b)
    }

    pub fn intersection(&self, other: &Event) -> Event {
        Event {
            mask: self
                .mask
                .iter()
                .zip(&other.mask)
                .map(|(a, b)| *a && *b)
                .collect(),
        }
    }

    fn check(&self, frame: &KripkeFrame) -> Result<()> {
        if self.mask.len() == frame.num_worlds() {
            Ok(())
        } else {
            Err(Error::EventOutOfFrame)
        }
    }
}

/// Worlds whose classes lie inside `event`, one class-level check per label.
fn inside_by_label(labels: &[usize], event: &Event) -> Event {
    let count = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut ok = vec![true; count];
    for (w, &c) in labels.iter().enumerate() {
        if !event.mask[w] {
            ok[c] = false;
        }
    }
    Event {
        mask: labels.iter().map(|&c| ok[c]).collect(),
    }
}

/// `K_p(E) = { w | R_p(w) ⊆ E }`.
pub fn know(frame: &KripkeFrame, p: PlayerId, event: &Event) -> Result<Event> {
    event.check(frame)?;
    if p.0 >= frame.num_players() {
        return Err(Error::UnknownPlayer(p.0));
    }
    Ok(inside_by_label(&frame.class_of[p.0], event))
}

/// `MK(E) = ⋂_p K_p(E)`.
pub fn mutual_know(frame: &KripkeFrame, event: &Event) -> Result<Event> {
    event.check(frame)?;
    let mut acc = event.clone();
    for labels in &frame.class_of {
        acc = acc.intersection(&inside_by_label(labels, event));
    }
    Ok(acc)
}

/// `CK(E) = { w | R⁺(w) ⊆ E }`.
pub fn common_know(frame: &KripkeFrame, event: &Event) -> Result<Event> {
    event.check(frame)?;
    Ok(inside_by_label(&frame.reach_components(), event))
}

/// A frame whose worlds are labeled with positional profiles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpistemicModel {
    frame: KripkeFrame,
    assignment: Vec<PositionalProfile>,
}

impl EpistemicModel {
    /// Checks that each player plays the same strategy across worlds she cannot distinguish.
    pub fn new(
        arena: &Arena,
        frame: KripkeFrame,
        assignment: Vec<PositionalProfile>,
    ) -> Result<Self> {
        if assignment.len() != frame.num_worlds() || frame.num_players() != arena.num_players() {
            return Err(Error::ProfileShape);
        }
        for s in &assignment {
            PositionalProfile::new(arena, s.successors().to_vec())?;
        }
        for p in arena.players() {
            for cls in frame.classes(p) {
                let first = cls[0];
                let sp = assignment[first].strategy(arena, p);
                if let Some(&other) = cls
                    .iter()
                    .find(|&&w| assignment[w].strategy(arena, p) != sp)
                {
                    return Err(Error::InconsistentAssignment {
                        player: p.0,
                        first: frame.world_name(first).to_string(),
                        second: frame.world_name(other).to_string(),
                    });
                }
            }
        }
        Ok(Self { frame, assignment })
    }

    pub fn frame(&self) -> &KripkeFrame {
        &self.frame
    }

    pub fn profile(&self, w: usize) -> &PositionalProfile {
        &self.assignment[w]
    }

    pub fn assignment(&self) -> &[PositionalProfile] {
        &self.assignment
    }

    pub fn num_worlds(&self) -> usize {
        self.frame.num_worlds()
    }
}

/// `M(X)`: one world per profile of `X`, labeled by itself, with `R_p` relating
/// exactly the profiles that agree on `p`'s strategy.
///
/// Duplicates in `profiles` are dropped; worlds follow the enumeration order
/// and are named by [`PositionalProfile::token`].
pub fn canonical_model(arena: &Arena, profiles: &[PositionalProfile]) -> Result<EpistemicModel> {
    if profiles.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut xs = profiles.to_vec();
    xs.sort();
    xs.dedup();
    let names: Vec<String> = xs.iter().map(|s| s.token(arena)).collect();
    let labels = arena
        .players()
        .map(|p| {
            let mut seen: Vec<_> = Vec::new();
            xs.iter()
                .map(|s| {
                    let sp = s.strategy(arena, p);
                    match seen.iter().position(|x| *x == sp) {
                        Some(i) => i,
                        None => {
                            seen.push(sp);
                            seen.len() - 1
                        }
                    }
                })
                .collect()
        })
        .collect();
    let frame = KripkeFrame::from_labels(names, labels)?;
    EpistemicModel::new(arena, frame, xs)
}

/// Searches `p`'s strategies (enumeration order) for one that is weakly
/// better across `members` and strictly better in one of them. `members` are
/// profile indices of a single indistinguishability class of `p`.
pub(crate) fn better_strategy(
    space: &ProfileSpace,
    wins: &impl Fn(usize, PlayerId) -> bool,
    p: PlayerId,
    members: &[usize],
) -> Option<usize> {
    (0..space.strategy_count(p)).find(|&t| {
        let mut strict = false;
        for &m in members {
            let before = wins(m, p);
            let after = wins(space.deviate(m, p, t), p);
            if before && !after {
                return false;
            }
            if !before && after {
                strict = true;
            }
        }
        strict
    })
}

/// Winner lookups computed on demand, for models over arenas too large to tabulate.
struct LazyWins<'a> {
    arena: &'a Arena,
    objectives: &'a ObjectiveProfile,
    space: &'a ProfileSpace,
    memo: RefCell<HashMap<usize, Vec<bool>>>,
}

impl LazyWins<'_> {
    fn wins(&self, idx: usize, p: PlayerId) -> bool {
        if let Some(row) = self.memo.borrow().get(&idx) {
            return row[p.0];
        }
        let lasso = self.space.outcome(self.arena.initial(), idx);
        let row = winner_mask(self.arena, self.objectives, &lasso);
        let w = row[p.0];
        self.memo.borrow_mut().insert(idx, row);
        w
    }
}

fn rational_worlds_with(
    model: &EpistemicModel,
    space: &ProfileSpace,
    wins: &impl Fn(usize, PlayerId) -> bool,
    p: PlayerId,
) -> Event {
    let idx: Vec<usize> = model.assignment.iter().map(|s| space.encode(s)).collect();
    let classes = model.frame.classes(p);
    let mut mask = vec![false; model.num_worlds()];
    for cls in classes {
        let mut members: Vec<usize> = cls.iter().map(|&w| idx[w]).collect();
        members.sort_unstable();
        members.dedup();
        let rational = better_strategy(space, wins, p, &members).is_none();
        for w in cls {
            mask[w] = rational;
        }
    }
    Event { mask }
}

/// `RAT^p`: worlds where no strategy of `p` is weakly better across her
/// indistinguishable worlds and strictly better in one of them.
pub fn rational_worlds(
    arena: &Arena,
    objectives: &ObjectiveProfile,
    model: &EpistemicModel,
    player: PlayerId,
    config: &Config,
) -> Result<Event> {
    arena.check_player(player)?;
    let space = ProfileSpace::new(arena, config.profile_cap)?;
    let lazy = LazyWins {
        arena,
        objectives,
        space: &space,
        memo: RefCell::new(HashMap::new()),
    };
    Ok(rational_worlds_with(
        model,
        &space,
        &|i, p| lazy.wins(i, p),
        player,
    ))
}

/// `RAT = ⋂_p RAT^p`.
pub fn rational_all(
    arena: &Arena,
    objectives: &ObjectiveProfile,
    model: &EpistemicModel,
    config: &Config,
) -> Result<Event> {
    let space = ProfileSpace::new(arena, config.profile_cap)?;
    let lazy = LazyWins {
        arena,
        objectives,
        space: &space,
        memo: RefCell::new(HashMap::new()),
    };
    let wins = |i, p| lazy.wins(i, p);
    let mut acc = Event::full(&model.frame);
    for p in arena.players() {
        acc = acc.intersection(&rational_worlds_with(model, &space, &wins, p));
    }
    Ok(acc)
}

/// `CK RAT` of a model.
pub fn common_knowledge_of_rationality(
    arena: &Arena,
    objectives: &ObjectiveProfile,
    model: &EpistemicModel,
    config: &Config,
) -> Result<Event> {
    let rat = rational_all(arena, objectives, model, config)?;
    common_know(&model.frame, &rat)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::arena::tests::triangle;
    use crate::arena::{ArenaBuilder, VertexId};
    use crate::formula::Formula;
    use crate::objectives::buchi_to_muller;

    /// Worlds XYZ for X, Y, Z in {R, L}; player p sees only her own letter.
    pub(crate) fn example_frame() -> KripkeFrame {
        let worlds: Vec<String> = ["RRR", "RRL", "RLR", "RLL", "LRR", "LRL", "LLR", "LLL"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let labels = (0..3)
            .map(|p| {
                worlds
                    .iter()
                    .map(|w| (w.as_bytes()[p] == b'L') as usize)
                    .collect()
            })
            .collect();
        KripkeFrame::from_labels(worlds, labels).unwrap()
    }

    /// s^R_p goes to v_{p-1}, s^L_p to v_{p+1}.
    pub(crate) fn example_model(a: &Arena) -> EpistemicModel {
        let frame = example_frame();
        let assignment = frame
            .world_names()
            .iter()
            .map(|w| {
                let succ = w
                    .bytes()
                    .enumerate()
                    .map(|(p, c)| VertexId(if c == b'R' { (p + 2) % 3 } else { (p + 1) % 3 }))
                    .collect();
                PositionalProfile::new(a, succ).unwrap()
            })
            .collect();
        EpistemicModel::new(a, frame, assignment).unwrap()
    }

    fn alpha_prime(a: &Arena) -> ObjectiveProfile {
        let objs = (0..3)
            .map(|p| buchi_to_muller(a, &[VertexId(p)]).unwrap())
            .collect();
        ObjectiveProfile::new(a, objs).unwrap()
    }

    #[test]
    fn example_knowledge() {
        let fr = example_frame();
        let e = Event::from_worlds(&fr, 0..4).unwrap();
        assert_eq!(know(&fr, PlayerId(0), &e).unwrap(), e);
        assert!(know(&fr, PlayerId(1), &e).unwrap().is_empty());
        assert!(know(&fr, PlayerId(2), &e).unwrap().is_empty());
        assert!(mutual_know(&fr, &e).unwrap().is_empty());
        let w = Event::full(&fr);
        assert_eq!(know(&fr, PlayerId(1), &w).unwrap(), w);
        assert_eq!(mutual_know(&fr, &w).unwrap(), w);
        assert_eq!(common_know(&fr, &w).unwrap(), w);
        let none = Event::empty(&fr);
        assert_eq!(mutual_know(&fr, &none).unwrap(), none);
        assert_eq!(common_know(&fr, &none).unwrap(), none);
    }

    #[test]
    fn singleton_frame() {
        let fr = KripkeFrame::from_labels(vec!["w".into()], vec![vec![0]]).unwrap();
        let e = Event::full(&fr);
        assert_eq!(common_know(&fr, &e).unwrap(), e);
    }

    #[test]
    fn relation_input_must_be_equivalence() {
        let ws = vec!["a".to_string(), "b".to_string()];
        assert_eq!(
            KripkeFrame::from_relations(ws.clone(), vec![vec![(0, 0), (1, 1), (0, 1)]]),
            Err(Error::NotAnEquivalence(0))
        );
        assert_eq!(
            KripkeFrame::from_relations(ws.clone(), vec![vec![(0, 0)]]),
            Err(Error::NotAnEquivalence(0))
        );
        let fr =
            KripkeFrame::from_relations(ws.clone(), vec![vec![(0, 0), (1, 1), (0, 1), (1, 0)]])
                .unwrap();
        assert!(fr.related(PlayerId(0), 0, 1));
        assert_eq!(
            KripkeFrame::from_classes(ws, vec![vec![vec![0, 1], vec![1]]]),
            Err(Error::NotAnEquivalence(0))
        );
    }

    #[test]
    fn assignment_must_respect_classes() {
        let a = triangle();
        let fr = KripkeFrame::from_classes(
            vec!["a".into(), "b".into()],
            vec![vec![vec![0, 1]], vec![], vec![]],
        )
        .unwrap();
        let s1 = PositionalProfile::new(&a, vec![VertexId(1), VertexId(0), VertexId(0)]).unwrap();
        let s2 = PositionalProfile::new(&a, vec![VertexId(2), VertexId(0), VertexId(0)]).unwrap();
        assert!(matches!(
            EpistemicModel::new(&a, fr.clone(), vec![s1.clone(), s2]),
            Err(Error::InconsistentAssignment { player: 0, .. })
        ));
        let s3 = PositionalProfile::new(&a, vec![VertexId(1), VertexId(2), VertexId(0)]).unwrap();
        assert!(EpistemicModel::new(&a, fr, vec![s1, s3]).is_ok());
    }

    #[test]
    fn example_rationality() {
        let a = triangle();
        let m = example_model(&a);
        let al = alpha_prime(&a);
        let cfg = Config::default();
        for p in a.players() {
            assert_eq!(
                rational_worlds(&a, &al, &m, p, &cfg).unwrap(),
                Event::full(m.frame())
            );
        }
        let rat = rational_all(&a, &al, &m, &cfg).unwrap();
        assert_eq!(rat, Event::full(m.frame()));
        assert_eq!(common_know(m.frame(), &rat).unwrap(), rat);
    }

    #[test]
    fn singleton_models() {
        let a = triangle();
        let cfg = Config::default();
        // O_p = Büchi({v_{p+1}}): s = (v1, v2, v0) is an equilibrium, s' = (v1, v0, v0) is not.
        let objs = (0..3)
            .map(|p| buchi_to_muller(&a, &[VertexId((p + 1) % 3)]).unwrap())
            .collect();
        let al = ObjectiveProfile::new(&a, objs).unwrap();
        let s = PositionalProfile::new(&a, vec![VertexId(1), VertexId(2), VertexId(0)]).unwrap();
        let m = canonical_model(&a, &[s]).unwrap();
        assert_eq!(
            rational_all(&a, &al, &m, &cfg).unwrap(),
            Event::full(m.frame())
        );

        let s2 = PositionalProfile::new(&a, vec![VertexId(1), VertexId(0), VertexId(0)]).unwrap();
        let m2 = canonical_model(&a, &[s2]).unwrap();
        assert!(rational_worlds(&a, &al, &m2, PlayerId(1), &cfg)
            .unwrap()
            .is_empty());

        // Mixed: an equilibrium world and a non-rational world, both isolated.
        let fr = KripkeFrame::from_labels(
            vec!["ne".into(), "bad".into()],
            vec![vec![0, 1], vec![0, 1], vec![0, 1]],
        )
        .unwrap();
        let s = PositionalProfile::new(&a, vec![VertexId(1), VertexId(2), VertexId(0)]).unwrap();
        let s2 = PositionalProfile::new(&a, vec![VertexId(1), VertexId(0), VertexId(0)]).unwrap();
        let mixed = EpistemicModel::new(&a, fr, vec![s, s2]).unwrap();
        assert_eq!(
            rational_all(&a, &al, &mixed, &cfg).unwrap().worlds(),
            vec![0]
        );
    }

    #[test]
    fn canonical_models() {
        let a = triangle();
        let all = crate::strategy::enumerate_profiles(&a, 64).unwrap();
        let m = canonical_model(&a, &all).unwrap();
        let ex = example_model(&a);
        // Same partitions as the XYZ model once worlds are matched by profile.
        for w in 0..8 {
            let x = ex
                .assignment()
                .iter()
                .position(|s| s == m.profile(w))
                .unwrap();
            for w2 in 0..8 {
                let x2 = ex
                    .assignment()
                    .iter()
                    .position(|s| s == m.profile(w2))
                    .unwrap();
                for p in a.players() {
                    assert_eq!(m.frame().related(p, w, w2), ex.frame().related(p, x, x2));
                }
            }
        }

        let single = canonical_model(&a, &all[..1]).unwrap();
        assert_eq!(single.num_worlds(), 1);

        // (v1, v0, v0) and (v2, v2, v1) differ in every component.
        let pair = canonical_model(&a, &[all[0].clone(), all[7].clone()]).unwrap();
        for p in a.players() {
            assert_eq!(pair.frame().classes(p).len(), 2);
        }
        assert_eq!(pair.frame().reach_components(), vec![0, 1]);

        assert_eq!(canonical_model(&a, &[]), Err(Error::EmptySet));
    }

    #[test]
    fn unused_player_objective_constant() {
        let mut b = ArenaBuilder::new(2);
        b.initial_vertex("u", 0)
            .vertex("w", 1)
            .edge("u", "w")
            .edge("w", "u")
            .edge("w", "w");
        let a = b.build().unwrap();
        let al = ObjectiveProfile::new(&a, vec![Formula::Const(true), Formula::Atom(VertexId(0))])
            .unwrap();
        let all = crate::strategy::enumerate_profiles(&a, 64).unwrap();
        let m = canonical_model(&a, &all).unwrap();
        let rat = rational_all(&a, &al, &m, &Config::default()).unwrap();
        // Player 1 strictly prefers returning to u.
        assert_eq!(
            rat.worlds()
                .into_iter()
                .map(|w| m.profile(w).successor(VertexId(1)))
                .collect::<Vec<_>>(),
            vec![VertexId(0)]
        );
    }
}
