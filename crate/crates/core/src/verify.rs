//! Decision procedures for rational verification, with witnesses.

use std::fmt;

use crate::arena::{Arena, Lasso};
use crate::ckr::{
    idip_table, in_t, in_t_p_table, membership_from_idip, Budget, Certificate, SearchMode,
    SearchOptions,
};
use crate::error::{Error, Result};
use crate::exec::{self, Config};
use crate::objectives::{eval_on_mask, ObjectiveFormula, ObjectiveProfile};
use crate::strategy::{is_nash, GameTable, PositionalProfile};

/// Whether the outcome of `profile` satisfies `spec`.
pub fn sver(arena: &Arena, profile: &PositionalProfile, spec: &ObjectiveFormula) -> bool {
    let lasso = arena.outcome(profile);
    eval_on_mask(spec, &lasso.inf_mask(arena.num_vertices()))
}

/// Which rational set a verdict quantifies over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Problem {
    Nash,
    Ckr,
    CkrBounded {
        world_bound: usize,
        mode: SearchMode,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Answer {
    Yes,
    /// No violating profile found by an incomplete search.
    YesOneSided,
    No,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "yes",
            Answer::YesOneSided => "yes*",
            Answer::No => "no",
        })
    }
}

/// A rational profile whose outcome violates the specification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub profile: PositionalProfile,
    pub lasso: Lasso,
    /// Membership certificate, for the CKR problems.
    pub certificate: Option<Certificate>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Stats {
    pub profiles_examined: u64,
    pub idip_rounds: usize,
    pub models_searched: u64,
    /// The IDIP fixpoint was empty, so the answer is vacuous.
    pub empty_rational_set: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub problem: Problem,
    pub answer: Answer,
    pub witness: Option<Witness>,
    pub stats: Stats,
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self.answer, Answer::Yes | Answer::YesOneSided)
    }
}

/// Does every positional Nash equilibrium satisfy `spec`? The witness is the
/// first violating equilibrium in enumeration order.
pub fn vp_nash_pos(
    arena: &Arena,
    objectives: &ObjectiveProfile,
    spec: &ObjectiveFormula,
    config: &Config,
) -> Result<Verdict> {
    let table = GameTable::build(arena, objectives, *config)?;
    let replies = table.winning_replies();
    let all: Vec<usize> = (0..table.len()).collect();
    let hit = exec::find_first(config, &all, |idx| {
        (!table.satisfies(idx, spec) && replies.refute(&table, idx).is_none()).then_some(idx)
    });
    let mut stats = Stats {
        profiles_examined: table.len() as u64,
        ..Stats::default()
    };
    Ok(match hit {
        Some((pos, idx)) => {
            stats.profiles_examined = pos as u64 + 1;
            Verdict {
                problem: Problem::Nash,
                answer: Answer::No,
                witness: Some(Witness {
                    profile: table.space.decode(idx),
                    lasso: table.outcome(idx),
                    certificate: None,
                }),
                stats,
            }
        }
        None => Verdict {
            problem: Problem::Nash,
            answer: Answer::Yes,
            witness: None,
            stats,
        },
    })
}

/// Does every profile consistent with common knowledge of rationality satisfy `spec`?
pub fn vpckr_pos(
    arena: &Arena,
    objectives: &ObjectiveProfile,
    spec: &ObjectiveFormula,
    config: &Config,
) -> Result<Verdict> {
    let table = GameTable::build(arena, objectives, *config)?;
    let out = idip_table(&table);
    let mut stats = Stats {
        profiles_examined: table.len() as u64,
        idip_rounds: out.trace.rounds.len(),
        empty_rational_set: out.survivors.is_empty(),
        ..Stats::default()
    };
    let hit = exec::find_first(config, &out.survivors, |idx| {
        (!table.satisfies(idx, spec)).then_some(idx)
    });
    Ok(match hit {
        Some((_, idx)) => {
            let m = membership_from_idip(&table, &out, idx)?;
            stats.models_searched = 1;
            Verdict {
                problem: Problem::Ckr,
                answer: Answer::No,
                witness: Some(Witness {
                    lasso: table.outcome(idx),
                    certificate: m.certificate().cloned(),
                    profile: m.profile,
                }),
                stats,
            }
        }
        None => Verdict {
            problem: Problem::Ckr,
            answer: Answer::Yes,
            witness: None,
            stats,
        },
    })
}

/// As [`vpckr_pos`], restricted to epistemic models with at most
/// `world_bound` worlds. Canonical-only search answers `yes*` when it finds
/// no violating member.
pub fn vpckr_p_pos(
    arena: &Arena,
    objectives: &ObjectiveProfile,
    spec: &ObjectiveFormula,
    world_bound: usize,
    options: SearchOptions,
    config: &Config,
) -> Result<Verdict> {
    if world_bound == 0 {
        return Err(Error::InvalidBound);
    }
    let problem = Problem::CkrBounded {
        world_bound,
        mode: options.mode,
    };
    let table = GameTable::build(arena, objectives, *config)?;
    // Bounded-model members are members of the IDIP fixpoint, so only its
    // violating members need a model search.
    let out = idip_table(&table);
    let mut stats = Stats {
        idip_rounds: out.trace.rounds.len(),
        empty_rational_set: out.survivors.is_empty(),
        ..Stats::default()
    };
    let mut budget = Budget {
        used: 0,
        cap: config.search_cap,
    };
    for &idx in &out.survivors {
        if table.satisfies(idx, spec) {
            continue;
        }
        stats.profiles_examined += 1;
        let m = in_t_p_table(&table, idx, world_bound, options, &mut budget)?;
        stats.models_searched = budget.used;
        if let Some(c) = m.certificate() {
            return Ok(Verdict {
                problem,
                answer: Answer::No,
                witness: Some(Witness {
                    profile: m.profile.clone(),
                    lasso: table.outcome(idx),
                    certificate: Some(c.clone()),
                }),
                stats,
            });
        }
    }
    stats.models_searched = budget.used;
    Ok(Verdict {
        problem,
        answer: match options.mode {
            SearchMode::Exact => Answer::Yes,
            SearchMode::CanonicalOnly => Answer::YesOneSided,
        },
        witness: None,
        stats,
    })
}

/// Re-checks a "no" verdict from scratch: the witness violates `spec` and
/// belongs to the rational set the verdict quantifies over. Yes-verdicts
/// carry nothing to check and pass.
pub fn revalidate(
    arena: &Arena,
    objectives: &ObjectiveProfile,
    spec: &ObjectiveFormula,
    verdict: &Verdict,
    config: &Config,
) -> Result<bool> {
    let Some(w) = &verdict.witness else {
        return Ok(verdict.answer != Answer::No);
    };
    if verdict.answer != Answer::No
        || sver(arena, &w.profile, spec)
        || arena.outcome(&w.profile) != w.lasso
    {
        return Ok(false);
    }
    match verdict.problem {
        Problem::Nash => Ok(is_nash(arena, objectives, &w.profile, config)?.is_equilibrium()),
        Problem::Ckr => {
            let Some(c) = &w.certificate else {
                return Ok(false);
            };
            Ok(in_t(arena, objectives, &w.profile, config)?.is_member()
                && c.check(arena, objectives, &w.profile, config)?)
        }
        Problem::CkrBounded { world_bound, .. } => {
            let Some(c) = &w.certificate else {
                return Ok(false);
            };
            Ok(c.model.num_worlds() <= world_bound
                && c.check(arena, objectives, &w.profile, config)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arena::tests::triangle;
    use crate::arena::VertexId;
    use crate::formula::{parse_formula, Formula};
    use crate::objectives::{buchi_to_muller, resolve};
    use crate::reductions::{
        build_aesat_instance, build_easat_instance, build_sat_instance, parse_qbf,
    };

    fn spec(a: &Arena, s: &str) -> ObjectiveFormula {
        resolve(a, &parse_formula(s).unwrap()).unwrap()
    }

    fn alpha_prime(a: &Arena) -> ObjectiveProfile {
        let objs = (0..3)
            .map(|p| buchi_to_muller(a, &[VertexId(p)]).unwrap())
            .collect();
        ObjectiveProfile::new(a, objs).unwrap()
    }

    #[test]
    fn sver_examples() {
        let a = triangle();
        let s = PositionalProfile::new(&a, vec![VertexId(1), VertexId(2), VertexId(0)]).unwrap();
        let s2 = PositionalProfile::new(&a, vec![VertexId(1), VertexId(0), VertexId(0)]).unwrap();
        assert!(sver(&a, &s, &spec(&a, "v0 & v1 & v2")));
        assert!(!sver(&a, &s2, &spec(&a, "v2")));
        assert!(sver(&a, &s2, &Formula::Const(true)));
    }

    #[test]
    fn nash_reduction_examples() {
        let cfg = Config::default();
        let r = build_aesat_instance(&parse_qbf("forall x1\nexists y1\nx1 | y1").unwrap()).unwrap();
        let v = vp_nash_pos(&r.arena, &r.objectives, &r.spec, &cfg).unwrap();
        assert_eq!(v.answer, Answer::Yes);
        let r = build_aesat_instance(&parse_qbf("forall x1\nexists y1\nx1 & y1").unwrap()).unwrap();
        let v = vp_nash_pos(&r.arena, &r.objectives, &r.spec, &cfg).unwrap();
        assert_eq!(v.answer, Answer::No);
        assert!(revalidate(&r.arena, &r.objectives, &r.spec, &v, &cfg).unwrap());
    }

    #[test]
    fn ckr_examples() {
        let cfg = Config::default();
        let a = triangle();
        let al = alpha_prime(&a);
        let o = spec(&a, "v0 & v1 & v2");
        let v = vpckr_pos(&a, &al, &o, &cfg).unwrap();
        assert_eq!(v.answer, Answer::No);
        assert!(revalidate(&a, &al, &o, &v, &cfg).unwrap());
        assert_eq!(
            vpckr_pos(&a, &al, &Formula::Const(true), &cfg)
                .unwrap()
                .answer,
            Answer::Yes
        );

        let r = build_easat_instance(&parse_qbf("exists y1\nforall x1\ny1").unwrap()).unwrap();
        assert_eq!(
            vpckr_pos(&r.arena, &r.objectives, &r.spec, &cfg)
                .unwrap()
                .answer,
            Answer::Yes
        );
        let r = build_easat_instance(&parse_qbf("exists y1\nforall x1\ny1 & x1").unwrap()).unwrap();
        let v = vpckr_pos(&r.arena, &r.objectives, &r.spec, &cfg).unwrap();
        assert_eq!(v.answer, Answer::No);
        assert!(revalidate(&r.arena, &r.objectives, &r.spec, &v, &cfg).unwrap());
    }

    #[test]
    fn bounded_examples() {
        let cfg = Config::default();
        let exact = SearchOptions::new(SearchMode::Exact);
        let r = build_sat_instance(&parse_formula("x1 & !x1").unwrap()).unwrap();
        for b in 1..=3 {
            let v = vpckr_p_pos(&r.arena, &r.objectives, &r.spec, b, exact, &cfg).unwrap();
            assert_eq!(v.answer, Answer::Yes);
        }
        let r = build_sat_instance(&parse_formula("x1").unwrap()).unwrap();
        let v = vpckr_p_pos(&r.arena, &r.objectives, &r.spec, 1, exact, &cfg).unwrap();
        assert_eq!(v.answer, Answer::No);
        assert_eq!(
            v.witness
                .as_ref()
                .unwrap()
                .certificate
                .as_ref()
                .unwrap()
                .model
                .num_worlds(),
            1
        );
        assert!(revalidate(&r.arena, &r.objectives, &r.spec, &v, &cfg).unwrap());

        let a = triangle();
        let al = alpha_prime(&a);
        let o = spec(&a, "v0 & v1 & v2");
        let v = vpckr_p_pos(&a, &al, &o, 1, exact, &cfg).unwrap();
        assert_eq!(v.answer, Answer::No);
        assert!(revalidate(&a, &al, &o, &v, &cfg).unwrap());

        let canon = SearchOptions::new(SearchMode::CanonicalOnly);
        let r = build_sat_instance(&parse_formula("x1 & !x1").unwrap()).unwrap();
        let v = vpckr_p_pos(&r.arena, &r.objectives, &r.spec, 2, canon, &cfg).unwrap();
        assert_eq!(v.answer, Answer::YesOneSided);
        assert!(v.is_yes());
        assert_eq!(
            vpckr_p_pos(&r.arena, &r.objectives, &r.spec, 0, exact, &cfg),
            Err(Error::InvalidBound)
        );
    }

    #[test]
    fn tampered_witness_fails_revalidation() {
        let cfg = Config::default();
        let a = triangle();
        let al = alpha_prime(&a);
        let o = spec(&a, "v0 & v1 & v2");
        let mut v = vpckr_pos(&a, &al, &o, &cfg).unwrap();
        let w = v.witness.as_mut().unwrap();
        w.profile =
            PositionalProfile::new(&a, vec![VertexId(1), VertexId(2), VertexId(0)]).unwrap();
        w.lasso = a.outcome(&w.profile);
        assert!(!revalidate(&a, &al, &o, &v, &cfg).unwrap());
    }
}
