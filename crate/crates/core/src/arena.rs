//! Game arenas and the lasso-shaped outcomes of positional profiles.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::strategy::PositionalProfile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlayerId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

impl fmt::Display for PlayerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Identifiers follow `[A-Za-z_][A-Za-z0-9_]*`.
pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Unvalidated arena description, filled in by parsers and reduction builders.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ArenaBuilder {
    pub players: usize,
    /// `(name, owner, is_initial)` in declaration order.
    pub vertices: Vec<(String, usize, bool)>,
    pub edges: Vec<(String, String)>,
}

impl ArenaBuilder {
    pub fn new(players: usize) -> Self {
        Self {
            players,
            ..Self::default()
        }
    }

    pub fn vertex(&mut self, name: impl Into<String>, owner: usize) -> &mut Self {
        self.vertices.push((name.into(), owner, false));
        self
    }

    pub fn initial_vertex(&mut self, name: impl Into<String>, owner: usize) -> &mut Self {
        self.vertices.push((name.into(), owner, true));
        self
    }

    pub fn edge(&mut self, from: impl Into<String>, to: impl Into<String>) -> &mut Self {
        self.edges.push((from.into(), to.into()));
        self
    }

    pub fn build(&self) -> Result<Arena> {
        validate_arena(self)
    }
}

/// A validated game arena. Immutable once built.
///
/// Successor lists are deduplicated and sorted by vertex declaration order,
/// so the arena does not depend on the order in which edges were declared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arena {
    num_players: usize,
    names: Vec<String>,
    index: HashMap<String, VertexId>,
    owner: Vec<PlayerId>,
    initial: VertexId,
    successors: Vec<Vec<VertexId>>,
    owned: Vec<Vec<VertexId>>,
}

pub fn validate_arena(raw: &ArenaBuilder) -> Result<Arena> {
    if raw.players == 0 {
        return Err(Error::NoPlayers);
    }
    let mut names: Vec<String> = Vec::with_capacity(raw.vertices.len());
    let mut index = HashMap::new();
    let mut owner = Vec::with_capacity(raw.vertices.len());
    let mut initial: Option<VertexId> = None;
    for (name, p, is_initial) in &raw.vertices {
        if !is_identifier(name) {
            return Err(Error::InvalidName(name.clone()));
        }
        if *p >= raw.players {
            return Err(Error::UnknownPlayer(*p));
        }
        let id = VertexId(names.len());
        if index.insert(name.clone(), id).is_some() {
            return Err(Error::DuplicateOwner(name.clone()));
        }
        if *is_initial {
            if let Some(prev) = initial {
                return Err(Error::MultipleInitial(names[prev.0].clone(), name.clone()));
            }
            initial = Some(id);
        }
        names.push(name.clone());
        owner.push(PlayerId(*p));
    }
    let initial = initial.ok_or(Error::MissingInitial)?;

    let mut successors = vec![Vec::new(); names.len()];
    for (from, to) in &raw.edges {
        let f = *index
            .get(from)
            .ok_or_else(|| Error::UnknownVertex(from.clone()))?;
        let t = *index
            .get(to)
            .ok_or_else(|| Error::UnknownVertex(to.clone()))?;
        successors[f.0].push(t);
    }
    for (v, succ) in successors.iter_mut().enumerate() {
        succ.sort_unstable();
        succ.dedup();
        if succ.is_empty() {
            return Err(Error::SinkVertex(names[v].clone()));
        }
    }

    let mut owned = vec![Vec::new(); raw.players];
    for (v, p) in owner.iter().enumerate() {
        owned[p.0].push(VertexId(v));
    }

    Ok(Arena {
        num_players: raw.players,
        names,
        index,
        owner,
        initial,
        successors,
        owned,
    })
}

impl Arena {
    pub fn num_players(&self) -> usize {
        self.num_players
    }

    pub fn num_vertices(&self) -> usize {
        self.names.len()
    }

    pub fn players(&self) -> impl Iterator<Item = PlayerId> + '_ {
        (0..self.num_players).map(PlayerId)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.names.len()).map(VertexId)
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.0]
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.index.get(name).copied()
    }

    pub fn lookup(&self, name: &str) -> Result<VertexId> {
        self.vertex(name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn owner(&self, v: VertexId) -> PlayerId {
        self.owner[v.0]
    }

    pub fn initial(&self) -> VertexId {
        self.initial
    }

    pub fn successors(&self, v: VertexId) -> &[VertexId] {
        &self.successors[v.0]
    }

    pub fn has_edge(&self, from: VertexId, to: VertexId) -> bool {
        self.successors[from.0].binary_search(&to).is_ok()
    }

    /// Vertices controlled by `p`, in declaration order.
    pub fn owned_by(&self, p: PlayerId) -> &[VertexId] {
        &self.owned[p.0]
    }

    pub fn check_player(&self, p: PlayerId) -> Result<()> {
        if p.0 < self.num_players {
            Ok(())
        } else {
            Err(Error::UnknownPlayer(p.0))
        }
    }

    /// Back to a raw description; `validate_arena(&a.to_builder())` reproduces `a`.
    pub fn to_builder(&self) -> ArenaBuilder {
        let vertices = self
            .vertices()
            .map(|v| (self.name(v).to_string(), self.owner(v).0, v == self.initial))
            .collect();
        let edges = self
            .vertices()
            .flat_map(|v| {
                self.successors(v)
                    .iter()
                    .map(move |&w| (self.name(v).to_string(), self.name(w).to_string()))
            })
            .collect();
        ArenaBuilder {
            players: self.num_players,
            vertices,
            edges,
        }
    }

    /// Outcome of a positional profile. The profile must belong to this arena.
    pub fn outcome(&self, profile: &PositionalProfile) -> Lasso {
        outcome_from(self.initial, self.num_vertices(), |v| profile.successor(v))
    }
}

/// The ultimately periodic play `prefix · cycle^ω`.
///
/// Canonical form: `prefix ++ cycle` has no repeated vertex and the cycle
/// starts at the first vertex that the play revisits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lasso {
    pub prefix: Vec<VertexId>,
    pub cycle: Vec<VertexId>,
}

pub fn outcome(arena: &Arena, profile: &PositionalProfile) -> Lasso {
    arena.outcome(profile)
}

pub(crate) fn outcome_from(
    start: VertexId,
    num_vertices: usize,
    next: impl Fn(VertexId) -> VertexId,
) -> Lasso {
    let mut position = vec![usize::MAX; num_vertices];
    let mut path = Vec::new();
    let mut v = start;
    while position[v.0] == usize::MAX {
        position[v.0] = path.len();
        path.push(v);
        v = next(v);
    }
    let cycle = path.split_off(position[v.0]);
    Lasso {
        prefix: path,
        cycle,
    }
}

impl Lasso {
    /// Vertices visited infinitely often: exactly the cycle.
    pub fn inf_set(&self) -> Vec<VertexId> {
        let mut inf = self.cycle.clone();
        inf.sort_unstable();
        inf
    }

    pub fn inf_mask(&self, num_vertices: usize) -> Vec<bool> {
        let mut mask = vec![false; num_vertices];
        for v in &self.cycle {
            mask[v.0] = true;
        }
        mask
    }

    /// The first `len` vertices of the play.
    pub fn unroll(&self, len: usize) -> Vec<VertexId> {
        self.prefix
            .iter()
            .chain(self.cycle.iter().cycle())
            .take(len)
            .copied()
            .collect()
    }

    pub fn display<'a>(&'a self, arena: &'a Arena) -> LassoDisplay<'a> {
        LassoDisplay { lasso: self, arena }
    }
}

pub fn inf_set(lasso: &Lasso) -> Vec<VertexId> {
    lasso.inf_set()
}

pub struct LassoDisplay<'a> {
    lasso: &'a Lasso,
    arena: &'a Arena,
}

impl fmt::Display for LassoDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.lasso.prefix {
            write!(f, "{} ", self.arena.name(*v))?;
        }
        f.write_str("(")?;
        for (i, v) in self.lasso.cycle.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.arena.name(*v))?;
        }
        f.write_str(")^w")
    }
}
