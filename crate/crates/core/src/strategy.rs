//! Positional strategies and profiles.
//!
//! A profile picks one successor per vertex. [`ProfileSpace`] numbers all
//! profiles of an arena in mixed radix, first-declared vertex most
//! significant, with successor choices in vertex declaration order. That
//! numbering is the enumeration order used for every witness the crate
//! reports. A player's strategies are numbered the same way over the vertices
//! she owns.

use std::fmt;

use crate::arena::{Arena, Lasso, PlayerId, VertexId};
use crate::error::{Error, Result};
use crate::exec::{self, Config};
use crate::objectives::{eval_on_mask, winner_mask, ObjectiveProfile};

/// One successor per vertex, indexed by vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PositionalProfile {
    succ: Vec<VertexId>,
}

impl PositionalProfile {
    pub fn new(arena: &Arena, succ: Vec<VertexId>) -> Result<Self> {
        if succ.len() != arena.num_vertices() {
            return Err(Error::ProfileShape);
        }
        for (v, w) in arena.vertices().zip(&succ) {
            if w.0 >= arena.num_vertices() || !arena.has_edge(v, *w) {
                return Err(Error::NotASuccessor {
                    from: arena.name(v).to_string(),
                    to: arena
                        .vertices()
                        .find(|x| x == w)
                        .map(|x| arena.name(x).to_string())
                        .unwrap_or_else(|| format!("#{}", w.0)),
                });
            }
        }
        Ok(Self { succ })
    }

    /// Builds a profile from `(from, to)` name pairs; every vertex must be covered once.
    pub fn from_choices<'n>(
        arena: &Arena,
        choices: impl IntoIterator<Item = (&'n str, &'n str)>,
    ) -> Result<Self> {
        let mut succ: Vec<Option<VertexId>> = vec![None; arena.num_vertices()];
        for (from, to) in choices {
            let f = arena.lookup(from)?;
            let t = arena.lookup(to)?;
            succ[f.0] = Some(t);
        }
        let succ = succ
            .into_iter()
            .enumerate()
            .map(|(v, s)| {
                s.ok_or_else(|| Error::MissingChoice(arena.name(VertexId(v)).to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(arena, succ)
    }

    pub fn successor(&self, v: VertexId) -> VertexId {
        self.succ[v.0]
    }

    pub fn successors(&self) -> &[VertexId] {
        &self.succ
    }

    /// Player `p`'s component.
    pub fn strategy(&self, arena: &Arena, p: PlayerId) -> PositionalStrategy {
        PositionalStrategy {
            player: p,
            choices: arena
                .owned_by(p)
                .iter()
                .map(|&v| (v, self.succ[v.0]))
                .collect(),
        }
    }

    /// `self[p ↦ replacement]`.
    pub fn deviate(&self, player: PlayerId, replacement: &PositionalStrategy) -> Result<Self> {
        if replacement.player != player {
            return Err(Error::PlayerMismatch {
                expected: player.0,
                found: replacement.player.0,
            });
        }
        let mut succ = self.succ.clone();
        for &(v, w) in &replacement.choices {
            succ[v.0] = w;
        }
        Ok(Self { succ })
    }

    /// Lines `<player>: <vertex> -> <vertex>` in vertex order.
    pub fn display<'a>(&'a self, arena: &'a Arena) -> ProfileDisplay<'a> {
        ProfileDisplay {
            profile: self,
            arena,
        }
    }

    /// Compact single-token name: successor names joined by `.` in vertex order.
    pub fn token(&self, arena: &Arena) -> String {
        self.succ
            .iter()
            .map(|w| arena.name(*w))
            .collect::<Vec<_>>()
            .join(".")
    }
}

pub fn deviate(
    profile: &PositionalProfile,
    player: PlayerId,
    replacement: &PositionalStrategy,
) -> Result<PositionalProfile> {
    profile.deviate(player, replacement)
}

pub struct ProfileDisplay<'a> {
    profile: &'a PositionalProfile,
    arena: &'a Arena,
}

impl fmt::Display for ProfileDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in self.arena.vertices() {
            writeln!(
                f,
                "{}: {} -> {}",
                self.arena.owner(v),
                self.arena.name(v),
                self.arena.name(self.profile.successor(v))
            )?;
        }
        Ok(())
    }
}

/// A positional strategy of one player: a successor for each vertex she owns.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PositionalStrategy {
    pub player: PlayerId,
    /// `(vertex, successor)` for every vertex of the player, in vertex order.
    pub choices: Vec<(VertexId, VertexId)>,
}

impl PositionalStrategy {
    pub fn new(
        arena: &Arena,
        player: PlayerId,
        choices: Vec<(VertexId, VertexId)>,
    ) -> Result<Self> {
        arena.check_player(player)?;
        let owned = arena.owned_by(player);
        for &v in owned {
            if !choices.iter().any(|(x, _)| *x == v) {
                return Err(Error::MissingChoice(arena.name(v).to_string()));
            }
        }
        let mut sorted = Vec::with_capacity(owned.len());
        for &v in owned {
            let w = choices
                .iter()
                .find(|(x, _)| *x == v)
                .map(|(_, w)| *w)
                .unwrap();
            if !arena.has_edge(v, w) {
                return Err(Error::NotASuccessor {
                    from: arena.name(v).to_string(),
                    to: arena.name(w).to_string(),
                });
            }
            sorted.push((v, w));
        }
        if choices.iter().any(|(v, _)| arena.owner(*v) != player) {
            return Err(Error::ProfileShape);
        }
        Ok(Self {
            player,
            choices: sorted,
        })
    }

    pub fn display<'a>(&'a self, arena: &'a Arena) -> StrategyDisplay<'a> {
        StrategyDisplay {
            strategy: self,
            arena,
        }
    }
}

pub struct StrategyDisplay<'a> {
    strategy: &'a PositionalStrategy,
    arena: &'a Arena,
}

impl fmt::Display for StrategyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .strategy
            .choices
            .iter()
            .map(|(v, w)| format!("{} -> {}", self.arena.name(*v), self.arena.name(*w)))
            .collect();
        write!(
            f,
            "player {} plays {{{}}}",
            self.strategy.player,
            parts.join(", ")
        )
    }
}

/// Mixed-radix numbering of all positional profiles of an arena.
#[derive(Debug, Clone)]
pub struct ProfileSpace {
    succ: Vec<Vec<VertexId>>,
    radix: Vec<usize>,
    stride: Vec<usize>,
    len: usize,
    owned: Vec<Vec<VertexId>>,
    /// `strategy_offset[p][t]`: contribution of strategy `t` of `p` to a profile index.
    strategy_offset: Vec<Vec<usize>>,
    /// Per player, strides that compress the non-owned digits of an index.
    others_stride: Vec<Vec<usize>>,
    others_len: Vec<usize>,
}

fn overflow(count: u128, cap: u64) -> Error {
    Error::CountOverflow {
        count: if count == u128::MAX {
            "more than 2^64 profiles".to_string()
        } else {
            format!("{count} profiles")
        },
        cap,
    }
}

/// `∏ |Δ(v)|`, saturating at `u128::MAX`.
pub fn profile_count(arena: &Arena) -> u128 {
    arena.vertices().fold(1u128, |acc, v| {
        acc.saturating_mul(arena.successors(v).len() as u128)
    })
}

impl ProfileSpace {
    pub fn new(arena: &Arena, cap: u64) -> Result<Self> {
        let count = profile_count(arena);
        if count > cap as u128 || count > usize::MAX as u128 {
            return Err(overflow(count, cap));
        }
        let n = arena.num_vertices();
        let succ: Vec<Vec<VertexId>> = arena
            .vertices()
            .map(|v| arena.successors(v).to_vec())
            .collect();
        let radix: Vec<usize> = succ.iter().map(Vec::len).collect();
        let mut stride = vec![1usize; n];
        for v in (0..n.saturating_sub(1)).rev() {
            stride[v] = stride[v + 1] * radix[v + 1];
        }
        let owned: Vec<Vec<VertexId>> = arena
            .players()
            .map(|p| arena.owned_by(p).to_vec())
            .collect();

        let mut strategy_offset = Vec::with_capacity(owned.len());
        let mut others_stride = Vec::with_capacity(owned.len());
        let mut others_len = Vec::with_capacity(owned.len());
        for vs in &owned {
            // Digits of `vs` in mixed radix, first owned vertex most significant.
            let mut offsets = vec![0usize];
            for v in vs {
                let mut next = Vec::with_capacity(offsets.len() * radix[v.0]);
                for base in &offsets {
                    for c in 0..radix[v.0] {
                        next.push(base + c * stride[v.0]);
                    }
                }
                offsets = next;
            }
            strategy_offset.push(offsets);

            let mut os = vec![0usize; n];
            let mut acc = 1usize;
            for v in (0..n).rev() {
                if !vs.contains(&VertexId(v)) {
                    os[v] = acc;
                    acc *= radix[v];
                }
            }
            others_stride.push(os);
            others_len.push(acc);
        }

        Ok(Self {
            succ,
            radix,
            stride,
            len: count as usize,
            owned,
            strategy_offset,
            others_stride,
            others_len,
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn num_players(&self) -> usize {
        self.owned.len()
    }

    fn digit(&self, idx: usize, v: usize) -> usize {
        (idx / self.stride[v]) % self.radix[v]
    }

    pub fn successor(&self, idx: usize, v: VertexId) -> VertexId {
        self.succ[v.0][self.digit(idx, v.0)]
    }

    pub fn decode(&self, idx: usize) -> PositionalProfile {
        PositionalProfile {
            succ: (0..self.succ.len())
                .map(|v| self.succ[v][self.digit(idx, v)])
                .collect(),
        }
    }

    pub fn encode(&self, profile: &PositionalProfile) -> usize {
        profile
            .succ
            .iter()
            .enumerate()
            .map(|(v, w)| {
                let d = self.succ[v]
                    .iter()
                    .position(|x| x == w)
                    .expect("profile matches arena");
                d * self.stride[v]
            })
            .sum()
    }

    pub fn outcome(&self, initial: VertexId, idx: usize) -> Lasso {
        crate::arena::outcome_from(initial, self.succ.len(), |v| self.successor(idx, v))
    }

    /// Number of positional strategies of `p`.
    pub fn strategy_count(&self, p: PlayerId) -> usize {
        self.strategy_offset[p.0].len()
    }

    fn own_offset(&self, idx: usize, p: PlayerId) -> usize {
        self.owned[p.0]
            .iter()
            .map(|v| self.digit(idx, v.0) * self.stride[v.0])
            .sum()
    }

    /// Index of `p`'s strategy within profile `idx`.
    pub fn strategy_index(&self, idx: usize, p: PlayerId) -> usize {
        self.owned[p.0]
            .iter()
            .fold(0, |acc, v| acc * self.radix[v.0] + self.digit(idx, v.0))
    }

    /// Dense index of everything except `p`'s choices.
    pub fn others_index(&self, idx: usize, p: PlayerId) -> usize {
        let os = &self.others_stride[p.0];
        (0..self.succ.len())
            .filter(|&v| os[v] != 0)
            .map(|v| self.digit(idx, v) * os[v])
            .sum()
    }

    pub fn others_len(&self, p: PlayerId) -> usize {
        self.others_len[p.0]
    }

    /// Profile index of `idx[p ↦ t]`.
    pub fn deviate(&self, idx: usize, p: PlayerId, t: usize) -> usize {
        idx - self.own_offset(idx, p) + self.strategy_offset[p.0][t]
    }

    pub fn strategy(&self, p: PlayerId, t: usize) -> PositionalStrategy {
        let profile = self.decode(self.strategy_offset[p.0][t]);
        PositionalStrategy {
            player: p,
            choices: self.owned[p.0]
                .iter()
                .map(|&v| (v, profile.succ[v.0]))
                .collect(),
        }
    }

    pub fn strategy_to_index(&self, s: &PositionalStrategy) -> usize {
        s.choices.iter().fold(0, |acc, (v, w)| {
            let d = self.succ[v.0]
                .iter()
                .position(|x| x == w)
                .expect("strategy matches arena");
            acc * self.radix[v.0] + d
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = PositionalProfile> + '_ {
        (0..self.len).map(|i| self.decode(i))
    }
}

/// All positional profiles in enumeration order; refuses more than `cap`.
pub fn enumerate_profiles(arena: &Arena, cap: u64) -> Result<Vec<PositionalProfile>> {
    let space = ProfileSpace::new(arena, cap)?;
    Ok(space.iter().collect())
}

/// Winner flags of every profile, computed once and shared by the decision procedures.
#[derive(Debug, Clone)]
pub struct GameTable<'a> {
    pub arena: &'a Arena,
    pub objectives: &'a ObjectiveProfile,
    pub space: ProfileSpace,
    pub config: Config,
    wins: Vec<bool>,
}

impl<'a> GameTable<'a> {
    pub fn build(
        arena: &'a Arena,
        objectives: &'a ObjectiveProfile,
        config: Config,
    ) -> Result<Self> {
        let space = ProfileSpace::new(arena, config.profile_cap)?;
        let np = arena.num_players();
        let rows = exec::map_range(&config, space.len(), |idx| {
            let lasso = space.outcome(arena.initial(), idx);
            winner_mask(arena, objectives, &lasso)
        });
        let mut wins = Vec::with_capacity(space.len() * np);
        for row in rows {
            wins.extend(row);
        }
        Ok(Self {
            arena,
            objectives,
            space,
            config,
            wins,
        })
    }

    pub fn len(&self) -> usize {
        self.space.len()
    }

    pub fn is_empty(&self) -> bool {
        self.space.is_empty()
    }

    pub fn wins(&self, idx: usize, p: PlayerId) -> bool {
        self.wins[idx * self.arena.num_players() + p.0]
    }

    pub fn winners(&self, idx: usize) -> Vec<PlayerId> {
        self.arena
            .players()
            .filter(|&p| self.wins(idx, p))
            .collect()
    }

    pub fn outcome(&self, idx: usize) -> Lasso {
        self.space.outcome(self.arena.initial(), idx)
    }

    pub fn satisfies(&self, idx: usize, spec: &crate::objectives::ObjectiveFormula) -> bool {
        let lasso = self.outcome(idx);
        eval_on_mask(spec, &lasso.inf_mask(self.arena.num_vertices()))
    }

    /// For every player and every configuration of the others, the first
    /// strategy (in enumeration order) that makes the player win.
    pub fn winning_replies(&self) -> WinningReplies {
        let per_player = self
            .arena
            .players()
            .map(|p| {
                let reps: Vec<usize> = (0..self.space.len())
                    .filter(|&idx| self.space.strategy_index(idx, p) == 0)
                    .collect();
                let mut table = vec![NONE; self.space.others_len(p)];
                let replies = exec::map_slice(&self.config, &reps, |rep| {
                    (0..self.space.strategy_count(p))
                        .find(|&t| self.wins(self.space.deviate(rep, p, t), p))
                        .unwrap_or(NONE)
                });
                for (rep, t) in reps.iter().zip(replies) {
                    table[self.space.others_index(*rep, p)] = t;
                }
                table
            })
            .collect();
        WinningReplies { per_player }
    }

    /// First strategy of `p` that wins against every positional profile of the others.
    pub fn winning_strategy(&self, p: PlayerId) -> Option<usize> {
        let reps: Vec<usize> = (0..self.space.len())
            .filter(|&idx| self.space.strategy_index(idx, p) == 0)
            .collect();
        (0..self.space.strategy_count(p)).find(|&t| {
            exec::find_first(&self.config, &reps, |rep| {
                (!self.wins(self.space.deviate(rep, p, t), p)).then_some(())
            })
            .is_none()
        })
    }
}

const NONE: usize = usize::MAX;

#[derive(Debug, Clone)]
pub struct WinningReplies {
    per_player: Vec<Vec<usize>>,
}

impl WinningReplies {
    /// The first deviation of `p` that wins against the others' part of `idx`.
    pub fn get(&self, space: &ProfileSpace, idx: usize, p: PlayerId) -> Option<usize> {
        let t = self.per_player[p.0][space.others_index(idx, p)];
        (t != NONE).then_some(t)
    }

    /// A refuting deviation `(p, t)` if profile `idx` is not a Nash equilibrium.
    pub fn refute(&self, table: &GameTable<'_>, idx: usize) -> Option<(PlayerId, usize)> {
        table
            .arena
            .players()
            .filter(|&p| !table.wins(idx, p))
            .find_map(|p| self.get(&table.space, idx, p).map(|t| (p, t)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NashCheck {
    Equilibrium,
    /// `player` loses under the profile but wins after switching to `deviation`.
    Refuted {
        player: PlayerId,
        deviation: PositionalStrategy,
    },
}

impl NashCheck {
    pub fn is_equilibrium(&self) -> bool {
        matches!(self, NashCheck::Equilibrium)
    }
}

/// Nash check by direct search over each losing player's positional strategies.
pub fn is_nash(
    arena: &Arena,
    objectives: &ObjectiveProfile,
    profile: &PositionalProfile,
    config: &Config,
) -> Result<NashCheck> {
    let space = ProfileSpace::new(arena, config.profile_cap)?;
    let idx = space.encode(profile);
    let base = winner_mask(arena, objectives, &space.outcome(arena.initial(), idx));
    for p in arena.players() {
        if base[p.0] {
            continue;
        }
        let candidates: Vec<usize> = (0..space.strategy_count(p)).collect();
        let hit = exec::find_first(config, &candidates, |t| {
            let dev = space.deviate(idx, p, t);
            let lasso = space.outcome(arena.initial(), dev);
            let inf = lasso.inf_mask(arena.num_vertices());
            eval_on_mask(objectives.get(p), &inf).then_some(t)
        });
        if let Some((_, t)) = hit {
            return Ok(NashCheck::Refuted {
                player: p,
                deviation: space.strategy(p, t),
            });
        }
    }
    Ok(NashCheck::Equilibrium)
}

/// A positional strategy of `player` that wins against all positional opponents.
pub fn has_winning_strategy(
    arena: &Arena,
    objectives: &ObjectiveProfile,
    player: PlayerId,
    config: &Config,
) -> Result<Option<PositionalStrategy>> {
    arena.check_player(player)?;
    let table = GameTable::build(arena, objectives, *config)?;
    Ok(table
        .winning_strategy(player)
        .map(|t| table.space.strategy(player, t)))
}
