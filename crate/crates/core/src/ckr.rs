//! Profiles consistent with common knowledge of rationality.
//!
//! The unbounded characterization is computed by iterated deletion of
//! inferior profiles (IDIP). Membership for models with a bounded number of
//! worlds is decided by direct model search.

use std::collections::BTreeMap;
use std::fmt;

use crate::arena::{Arena, PlayerId};
use crate::epistemic::{
    better_strategy, canonical_model, common_knowledge_of_rationality, EpistemicModel, KripkeFrame,
};
use crate::error::{Error, Result};
use crate::exec::{self, Config};
use crate::objectives::ObjectiveProfile;
use crate::strategy::{GameTable, PositionalProfile, PositionalStrategy};

/// A profile deleted in some IDIP round, with the deviation that made it inferior.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Removal {
    pub profile: PositionalProfile,
    pub player: PlayerId,
    pub deviation: PositionalStrategy,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdipRound {
    /// Size of the pool the round started from.
    pub pool_size: usize,
    pub removed: Vec<Removal>,
}

/// Round-by-round record of IDIP; only the last round removes nothing.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IdipTrace {
    pub rounds: Vec<IdipRound>,
    /// The fixpoint, in enumeration order.
    pub survivors: Vec<PositionalProfile>,
}

impl IdipTrace {
    /// The pool round `i` (0-based) started from: the fixpoint plus
    /// everything removed in round `i` or later, sorted.
    pub fn pool(&self, i: usize) -> Vec<PositionalProfile> {
        let mut pool = self.survivors.clone();
        for r in self.rounds.iter().skip(i) {
            pool.extend(r.removed.iter().map(|rm| rm.profile.clone()));
        }
        pool.sort();
        pool
    }

    pub fn render(&self, arena: &Arena) -> String {
        let mut out = String::new();
        for (i, r) in self.rounds.iter().enumerate() {
            out.push_str(&format!(
                "round {}: pool {} removed {}",
                i + 1,
                r.pool_size,
                r.removed.len()
            ));
            for rm in &r.removed {
                let dev: Vec<String> = rm
                    .deviation
                    .choices
                    .iter()
                    .map(|(v, w)| format!("{}->{}", arena.name(*v), arena.name(*w)))
                    .collect();
                out.push_str(&format!(
                    "; {} by {}:{}",
                    rm.profile.token(arena),
                    rm.player,
                    dev.join(",")
                ));
            }
            out.push('\n');
        }
        out
    }
}

/// IDIP over profile indices of a table.
#[derive(Debug, Clone)]
pub struct IdipOutcome {
    /// Surviving profile indices, ascending.
    pub survivors: Vec<usize>,
    pub trace: IdipTrace,
}

/// First inferiority witness `(p, t)` for every pool member that has one.
fn inferiority_witnesses(
    table: &GameTable<'_>,
    pool: &[usize],
) -> BTreeMap<usize, (PlayerId, usize)> {
    let space = &table.space;
    let mut found: BTreeMap<usize, (PlayerId, usize)> = BTreeMap::new();
    for p in table.arena.players() {
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &idx in pool {
            groups
                .entry(space.strategy_index(idx, p))
                .or_default()
                .push(idx);
        }
        let groups: Vec<Vec<usize>> = groups.into_values().collect();
        let keys: Vec<usize> = (0..groups.len()).collect();
        let per_group = exec::map_slice(&table.config, &keys, |g| {
            let members = &groups[g];
            let (winners, losers): (Vec<usize>, Vec<usize>) =
                members.iter().partition(|&&m| table.wins(m, p));
            let mut hits: Vec<(usize, usize)> = Vec::new();
            if losers.is_empty() {
                return hits;
            }
            let mut pending = losers.clone();
            for t in 0..space.strategy_count(p) {
                let improved: Vec<usize> = pending
                    .iter()
                    .copied()
                    .filter(|&s| table.wins(space.deviate(s, p, t), p))
                    .collect();
                if improved.is_empty() {
                    continue;
                }
                let safe = winners
                    .iter()
                    .all(|&w| table.wins(space.deviate(w, p, t), p));
                if !safe {
                    continue;
                }
                for s in &improved {
                    hits.push((*s, t));
                }
                pending.retain(|s| !improved.contains(s));
                if pending.is_empty() {
                    break;
                }
            }
            hits
        });
        for hits in per_group {
            for (s, t) in hits {
                found.entry(s).or_insert((p, t));
            }
        }
    }
    found
}

/// IDIP from the full profile set; each round removes every inferior profile at once.
pub fn idip_table(table: &GameTable<'_>) -> IdipOutcome {
    let mut pool: Vec<usize> = (0..table.len()).collect();
    let mut trace = IdipTrace::default();
    loop {
        let witnesses = inferiority_witnesses(table, &pool);
        let removed: Vec<Removal> = witnesses
            .iter()
            .map(|(&idx, &(p, t))| Removal {
                profile: table.space.decode(idx),
                player: p,
                deviation: table.space.strategy(p, t),
            })
            .collect();
        trace.rounds.push(IdipRound {
            pool_size: pool.len(),
            removed,
        });
        if witnesses.is_empty() {
            break;
        }
        pool.retain(|idx| !witnesses.contains_key(idx));
    }
    trace.survivors = pool.iter().map(|&i| table.space.decode(i)).collect();
    IdipOutcome {
        survivors: pool,
        trace,
    }
}

pub fn idip(
    arena: &Arena,
    objectives: &ObjectiveProfile,
    config: &Config,
) -> Result<(Vec<PositionalProfile>, IdipTrace)> {
    let table = GameTable::build(arena, objectives, *config)?;
    let out = idip_table(&table);
    Ok((out.trace.survivors.clone(), out.trace))
}

/// Inferiority of `profile` relative to `pool`: a player `p` and strategy `t_p`
/// such that `p` loses under `profile` but wins after switching to `t_p`, and
/// switching never turns a win into a loss for any pool member agreeing with
/// `profile` on `p`'s strategy.
pub fn is_inferior(
    arena: &Arena,
    objectives: &ObjectiveProfile,
    pool: &[PositionalProfile],
    profile: &PositionalProfile,
    config: &Config,
) -> Result<Option<(PlayerId, PositionalStrategy)>> {
    let table = GameTable::build(arena, objectives, *config)?;
    let target = table.space.encode(profile);
    let mut idx: Vec<usize> = pool.iter().map(|s| table.space.encode(s)).collect();
    if !idx.contains(&target) {
        idx.push(target);
    }
    idx.sort_unstable();
    idx.dedup();
    let w = inferiority_witnesses(&table, &idx);
    Ok(w.get(&target)
        .map(|&(p, t)| (p, table.space.strategy(p, t))))
}

/// An epistemic model and a world of it where rationality is common
/// knowledge and the world is labeled with the profile in question.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub model: EpistemicModel,
    pub world: usize,
}

impl Certificate {
    /// Re-derives `world ∈ CK RAT` from scratch.
    pub fn check(
        &self,
        arena: &Arena,
        objectives: &ObjectiveProfile,
        profile: &PositionalProfile,
        config: &Config,
    ) -> Result<bool> {
        if self.model.profile(self.world) != profile {
            return Ok(false);
        }
        let ck = common_knowledge_of_rationality(arena, objectives, &self.model, config)?;
        Ok(ck.contains(self.world))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Every model with at most `world_bound` worlds.
    Exact,
    /// Only canonical models `M(X)` with `|X| ≤ world_bound`; failure is not a refutation.
    CanonicalOnly,
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchMode::Exact => "exact",
            SearchMode::CanonicalOnly => "canonical",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    Member(Certificate),
    /// Deleted by IDIP in the given round (1-based).
    Deleted {
        round: usize,
        removal: Removal,
    },
    /// Bounded search found no model; conclusive only in exact mode.
    NotFound {
        world_bound: usize,
        mode: SearchMode,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CkrMembership {
    pub profile: PositionalProfile,
    pub evidence: Evidence,
    /// Candidate models examined (bounded search only).
    pub models_searched: u64,
}

impl CkrMembership {
    pub fn is_member(&self) -> bool {
        matches!(self.evidence, Evidence::Member(_))
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match &self.evidence {
            Evidence::Member(c) => Some(c),
            _ => None,
        }
    }
}

/// Membership in the unbounded characterization, decided through IDIP; the
/// certificate is the canonical model of the IDIP fixpoint.
pub fn in_t(
    arena: &Arena,
    objectives: &ObjectiveProfile,
    profile: &PositionalProfile,
    config: &Config,
) -> Result<CkrMembership> {
    let table = GameTable::build(arena, objectives, *config)?;
    let out = idip_table(&table);
    membership_from_idip(&table, &out, table.space.encode(profile))
}

pub(crate) fn membership_from_idip(
    table: &GameTable<'_>,
    out: &IdipOutcome,
    target: usize,
) -> Result<CkrMembership> {
    let profile = table.space.decode(target);
    if out.survivors.binary_search(&target).is_ok() {
        let xs: Vec<PositionalProfile> = out
            .survivors
            .iter()
            .map(|&i| table.space.decode(i))
            .collect();
        let model = canonical_model(table.arena, &xs)?;
        let world = model
            .assignment()
            .iter()
            .position(|s| *s == profile)
            .expect("survivor is a world");
        return Ok(CkrMembership {
            profile,
            evidence: Evidence::Member(Certificate { model, world }),
            models_searched: 0,
        });
    }
    for (i, round) in out.trace.rounds.iter().enumerate() {
        if let Some(rm) = round.removed.iter().find(|r| r.profile == profile) {
            return Ok(CkrMembership {
                profile,
                evidence: Evidence::Deleted {
                    round: i + 1,
                    removal: rm.clone(),
                },
                models_searched: 0,
            });
        }
    }
    unreachable!("profile neither survives nor is removed")
}

/// Tuning knobs of the bounded-model search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub mode: SearchMode,
    /// Symmetry and duplicate-world pruning in exact mode. Disabling it runs
    /// the plain brute force, which exists to cross-check the pruned search.
    pub prune: bool,
}

impl SearchOptions {
    pub fn new(mode: SearchMode) -> Self {
        Self { mode, prune: true }
    }
}

/// Shared budget for the number of candidate models examined.
#[derive(Debug)]
pub(crate) struct Budget {
    pub used: u64,
    pub cap: u64,
}

impl Budget {
    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.cap {
            return Err(Error::CountOverflow {
                count: format!("more than {} candidate models", self.cap),
                cap: self.cap,
            });
        }
        Ok(())
    }
}

/// All set partitions of `k` items, as restricted growth strings.
fn set_partitions(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; k];
    fn rec(i: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max + 1 {
            cur[i] = b;
            rec(i + 1, max.max(b), cur, out);
        }
    }
    if k == 0 {
        return vec![vec![]];
    }
    rec(1, 0, &mut cur, &mut out);
    out
}

/// Advances `labels[from..]` to the next tuple over `0..n`; nondecreasing tuples only when `sorted`.
fn next_tuple(labels: &mut [usize], from: usize, n: usize, sorted: bool) -> bool {
    let mut i = labels.len();
    while i > from {
        i -= 1;
        if labels[i] + 1 < n {
            labels[i] += 1;
            let v = if sorted { labels[i] } else { 0 };
            for l in labels.iter_mut().skip(i + 1) {
                *l = v;
            }
            return true;
        }
    }
    false
}

fn blocks(partition: &[usize]) -> Vec<Vec<usize>> {
    let count = partition.iter().copied().max().map_or(0, |m| m + 1);
    let mut out = vec![Vec::new(); count];
    for (w, &b) in partition.iter().enumerate() {
        out[b].push(w);
    }
    out
}

fn connected(partitions: &[&Vec<usize>], k: usize) -> bool {
    let mut seen = vec![false; k];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(w) = stack.pop() {
        for part in partitions {
            for x in 0..k {
                if !seen[x] && part[x] == part[w] {
                    seen[x] = true;
                    stack.push(x);
                }
            }
        }
    }
    seen.into_iter().all(|b| b)
}

fn model_from(
    table: &GameTable<'_>,
    labels: &[usize],
    partitions: &[&Vec<usize>],
) -> Result<EpistemicModel> {
    let names = (0..labels.len()).map(|w| format!("w{w}")).collect();
    let frame = KripkeFrame::from_labels(names, partitions.iter().map(|p| (*p).clone()).collect())?;
    let assignment = labels.iter().map(|&i| table.space.decode(i)).collect();
    EpistemicModel::new(table.arena, frame, assignment)
}

fn exact_search(
    table: &GameTable<'_>,
    target: usize,
    world_bound: usize,
    prune: bool,
    budget: &mut Budget,
) -> Result<Option<Certificate>> {
    let space = &table.space;
    let n = space.len();
    let players: Vec<PlayerId> = table.arena.players().collect();
    let wins = |i: usize, p: PlayerId| table.wins(i, p);
    for k in 1..=world_bound {
        let partitions = set_partitions(k);
        let mut labels = vec![0usize; k];
        labels[0] = target;
        loop {
            // Per player: partitions refining strategy equality (and, when
            // pruning, whose every block is rational).
            let mut options: Vec<Vec<&Vec<usize>>> = Vec::with_capacity(players.len());
            for &p in &players {
                let strat: Vec<usize> =
                    labels.iter().map(|&l| space.strategy_index(l, p)).collect();
                let valid: Vec<&Vec<usize>> = partitions
                    .iter()
                    .filter(|part| {
                        (0..k)
                            .all(|a| (a + 1..k).all(|b| part[a] != part[b] || strat[a] == strat[b]))
                    })
                    .filter(|part| {
                        !prune
                            || blocks(part).iter().all(|blk| {
                                let mut members: Vec<usize> =
                                    blk.iter().map(|&w| labels[w]).collect();
                                members.sort_unstable();
                                members.dedup();
                                better_strategy(space, &wins, p, &members).is_none()
                            })
                    })
                    .collect();
                options.push(valid);
            }
            if options.iter().all(|o| !o.is_empty()) {
                let mut choice = vec![0usize; players.len()];
                loop {
                    budget.tick()?;
                    let chosen: Vec<&Vec<usize>> =
                        choice.iter().zip(&options).map(|(&c, o)| o[c]).collect();
                    if prune {
                        let duplicate = (0..k).any(|a| {
                            (a + 1..k).any(|b| {
                                labels[a] == labels[b] && chosen.iter().all(|pt| pt[a] == pt[b])
                            })
                        });
                        if !duplicate && connected(&chosen, k) {
                            let model = model_from(table, &labels, &chosen)?;
                            return Ok(Some(Certificate { model, world: 0 }));
                        }
                    } else {
                        let model = model_from(table, &labels, &chosen)?;
                        let ck = common_knowledge_of_rationality(
                            table.arena,
                            table.objectives,
                            &model,
                            &table.config,
                        )?;
                        if ck.contains(0) {
                            return Ok(Some(Certificate { model, world: 0 }));
                        }
                    }
                    // Next combination of per-player partitions.
                    let mut i = players.len();
                    let mut advanced = false;
                    while i > 0 {
                        i -= 1;
                        if choice[i] + 1 < options[i].len() {
                            choice[i] += 1;
                            for c in choice.iter_mut().skip(i + 1) {
                                *c = 0;
                            }
                            advanced = true;
                            break;
                        }
                    }
                    if !advanced {
                        break;
                    }
                }
            }
            if !next_tuple(&mut labels, 1, n, prune) {
                break;
            }
        }
    }
    Ok(None)
}

/// `target ∈ CK RAT` in `M(X)`, using the table's winner flags.
fn canonical_ck_rat(table: &GameTable<'_>, xs: &[usize], target: usize) -> bool {
    let space = &table.space;
    let wins = |i: usize, p: PlayerId| table.wins(i, p);
    let k = xs.len();
    let labels: Vec<Vec<usize>> = table
        .arena
        .players()
        .map(|p| xs.iter().map(|&x| space.strategy_index(x, p)).collect())
        .collect();
    let mut rational = vec![true; k];
    for (pi, p) in table.arena.players().enumerate() {
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (w, &l) in labels[pi].iter().enumerate() {
            groups.entry(l).or_default().push(w);
        }
        for ws in groups.values() {
            let members: Vec<usize> = ws.iter().map(|&w| xs[w]).collect();
            if better_strategy(space, &wins, p, &members).is_some() {
                for &w in ws {
                    rational[w] = false;
                }
            }
        }
    }
    // Component of the target under the union of strategy-equality relations.
    let start = xs.iter().position(|&x| x == target).expect("target in X");
    let mut seen = vec![false; k];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(w) = stack.pop() {
        if !rational[w] {
            return false;
        }
        for l in &labels {
            for x in 0..k {
                if !seen[x] && l[x] == l[w] {
                    seen[x] = true;
                    stack.push(x);
                }
            }
        }
    }
    true
}

fn canonical_search(
    table: &GameTable<'_>,
    target: usize,
    world_bound: usize,
    budget: &mut Budget,
) -> Result<Option<Certificate>> {
    let others: Vec<usize> = (0..table.len()).filter(|&i| i != target).collect();
    for extra in 0..world_bound.min(table.len()) {
        // Combinations of `extra` other profiles, lexicographic.
        let mut comb: Vec<usize> = (0..extra).collect();
        loop {
            budget.tick()?;
            let mut xs: Vec<usize> = comb.iter().map(|&c| others[c]).collect();
            xs.push(target);
            xs.sort_unstable();
            if canonical_ck_rat(table, &xs, target) {
                let profiles: Vec<PositionalProfile> =
                    xs.iter().map(|&i| table.space.decode(i)).collect();
                let model = canonical_model(table.arena, &profiles)?;
                let world = xs.iter().position(|&x| x == target).unwrap();
                return Ok(Some(Certificate { model, world }));
            }
            // Next combination.
            let mut i = extra;
            let mut advanced = false;
            while i > 0 {
                i -= 1;
                if comb[i] < others.len() - extra + i {
                    comb[i] += 1;
                    for j in i + 1..extra {
                        comb[j] = comb[j - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }
    Ok(None)
}

pub(crate) fn in_t_p_table(
    table: &GameTable<'_>,
    target: usize,
    world_bound: usize,
    options: SearchOptions,
    budget: &mut Budget,
) -> Result<CkrMembership> {
    if world_bound == 0 {
        return Err(Error::InvalidBound);
    }
    let before = budget.used;
    let found = match options.mode {
        SearchMode::Exact => exact_search(table, target, world_bound, options.prune, budget)?,
        SearchMode::CanonicalOnly => canonical_search(table, target, world_bound, budget)?,
    };
    let evidence = match found {
        Some(c) => Evidence::Member(c),
        None => Evidence::NotFound {
            world_bound,
            mode: options.mode,
        },
    };
    Ok(CkrMembership {
        profile: table.space.decode(target),
        evidence,
        models_searched: budget.used - before,
    })
}

/// Membership in the characterization restricted to models with at most
/// `world_bound` worlds.
pub fn in_t_p(
    arena: &Arena,
    objectives: &ObjectiveProfile,
    profile: &PositionalProfile,
    world_bound: usize,
    options: SearchOptions,
    config: &Config,
) -> Result<CkrMembership> {
    if world_bound == 0 {
        return Err(Error::InvalidBound);
    }
    let table = GameTable::build(arena, objectives, *config)?;
    let target = table.space.encode(profile);
    let mut budget = Budget {
        used: 0,
        cap: config.search_cap,
    };
    in_t_p_table(&table, target, world_bound, options, &mut budget)
}

/// Default world bound: `|V| · |P|`.
pub fn default_world_bound(arena: &Arena) -> usize {
    (arena.num_vertices() * arena.num_players()).max(1)
}
