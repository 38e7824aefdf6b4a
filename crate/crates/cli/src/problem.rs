//! Problem files: arena, objectives, specification and an optional epistemic model.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use ratver::arena::{Arena, ArenaBuilder, PlayerId, VertexId};
use ratver::epistemic::{EpistemicModel, KripkeFrame};
use ratver::formula::parse_formula;
use ratver::objectives::{render, resolve, ObjectiveFormula, ObjectiveProfile};
use ratver::{Error as CoreError, PositionalProfile};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Problem {
    pub arena: Arena,
    pub objectives: ObjectiveProfile,
    pub spec: ObjectiveFormula,
    pub model: Option<EpistemicModel>,
}

struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl Line<'_> {
    fn words(&self) -> Vec<(usize, &str)> {
        let mut out = Vec::new();
        let mut start = None;
        for (i, c) in self.text.char_indices() {
            match (c.is_whitespace(), start) {
                (true, Some(s)) => {
                    out.push((s, &self.text[s..i]));
                    start = None;
                }
                (false, None) => start = Some(i),
                _ => {}
            }
        }
        if let Some(s) = start {
            out.push((s, &self.text[s..]));
        }
        out
    }

    fn syntax(&self, col: usize, message: impl Into<String>) -> CliError {
        CliError::Syntax {
            line: self.number,
            col: col + 1,
            message: message.into(),
        }
    }

    /// The rest of the line after word `k`, with its column.
    fn rest(&self, words: &[(usize, &str)], k: usize) -> Option<(usize, String)> {
        words.get(k).map(|(c, _)| (*c, self.text[*c..].to_string()))
    }
}

fn number(line: &Line<'_>, word: Option<&(usize, &str)>, what: &str) -> Result<usize, CliError> {
    let (col, w) = word.ok_or_else(|| line.syntax(line.text.len(), format!("expected {what}")))?;
    w.parse()
        .map_err(|_| line.syntax(*col, format!("expected {what}, found `{w}`")))
}

fn formula_at(
    line: &Line<'_>,
    arena: &Arena,
    col: usize,
    text: &str,
) -> Result<ObjectiveFormula, CliError> {
    let f = parse_formula(text).map_err(|e| match e {
        CoreError::FormulaSyntax { col: c, message } => line.syntax(col + c - 1, message),
        other => CliError::Core(other),
    })?;
    resolve(arena, &f).map_err(|e| match e {
        CoreError::UnknownVertex(name) => CliError::UnknownName {
            line: line.number,
            name,
        },
        other => CliError::Core(other),
    })
}

/// Parses and validates a problem file.
pub fn parse_problem(text: &str) -> Result<Problem, CliError> {
    let lines: Vec<Line<'_>> = text
        .lines()
        .enumerate()
        .map(|(i, l)| Line {
            number: i + 1,
            text: l.split('#').next().unwrap_or(""),
        })
        .filter(|l| !l.text.trim().is_empty())
        .collect();

    let mut players: Option<usize> = None;
    let mut builder: Option<ArenaBuilder> = None;
    let mut declared: HashMap<String, usize> = HashMap::new();
    let mut objective_lines: Vec<(usize, &Line<'_>, usize, String)> = Vec::new();
    let mut spec_line: Option<(&Line<'_>, usize, String)> = None;
    let mut worlds: Vec<(String, usize)> = Vec::new();
    let mut assigns: Vec<(&Line<'_>, String, String, String)> = Vec::new();
    let mut classes: Vec<(&Line<'_>, usize, Vec<String>)> = Vec::new();

    for line in &lines {
        let words = line.words();
        let (col, head) = words[0];
        match head {
            "players" => {
                if players.is_some() {
                    return Err(line.syntax(col, "duplicate `players` line"));
                }
                let n = number(line, words.get(1), "a player count")?;
                players = Some(n);
                builder = Some(ArenaBuilder::new(n));
            }
            "vertex" => {
                let b = builder
                    .as_mut()
                    .ok_or_else(|| line.syntax(col, "`players` must come first"))?;
                let (ncol, name) = *words
                    .get(1)
                    .ok_or_else(|| line.syntax(line.text.len(), "expected a vertex name"))?;
                match words.get(2) {
                    Some((_, "owner")) => {}
                    Some((c, w)) => {
                        return Err(line.syntax(*c, format!("expected `owner`, found `{w}`")))
                    }
                    None => return Err(line.syntax(line.text.len(), "expected `owner`")),
                }
                let owner = number(line, words.get(3), "an owner")?;
                if owner >= players.unwrap_or(0) {
                    return Err(line.syntax(words[3].0, format!("no player {owner}")));
                }
                if declared.insert(name.to_string(), line.number).is_some() {
                    return Err(line.syntax(ncol, format!("vertex `{name}` declared twice")));
                }
                match words.get(4) {
                    None => {
                        b.vertex(name, owner);
                    }
                    Some((_, "initial")) => {
                        b.initial_vertex(name, owner);
                    }
                    Some((c, w)) => return Err(line.syntax(*c, format!("unexpected `{w}`"))),
                }
                if let Some((c, w)) = words.get(5) {
                    return Err(line.syntax(*c, format!("unexpected `{w}`")));
                }
            }
            "edge" => {
                let b = builder
                    .as_mut()
                    .ok_or_else(|| line.syntax(col, "`players` must come first"))?;
                if words.len() != 3 {
                    return Err(line.syntax(col, "expected `edge <from> <to>`"));
                }
                for (_, name) in &words[1..] {
                    if !declared.contains_key(*name) {
                        return Err(CliError::UnknownName {
                            line: line.number,
                            name: name.to_string(),
                        });
                    }
                }
                b.edge(words[1].1, words[2].1);
            }
            "objective" => {
                let p = number(line, words.get(1), "a player")?;
                let (c, f) = line
                    .rest(&words, 2)
                    .ok_or_else(|| line.syntax(line.text.len(), "expected a formula"))?;
                objective_lines.push((p, line, c, f));
            }
            "spec" => {
                if spec_line.is_some() {
                    return Err(line.syntax(col, "duplicate `spec` line"));
                }
                let (c, f) = line
                    .rest(&words, 1)
                    .ok_or_else(|| line.syntax(line.text.len(), "expected a formula"))?;
                spec_line = Some((line, c, f));
            }
            "world" => {
                if words.len() != 2 {
                    return Err(line.syntax(col, "expected `world <id>`"));
                }
                if worlds.iter().any(|(w, _)| w == words[1].1) {
                    return Err(
                        line.syntax(words[1].0, format!("world `{}` declared twice", words[1].1))
                    );
                }
                worlds.push((words[1].1.to_string(), line.number));
            }
            "assign" => {
                let parts: Vec<&str> = words.iter().map(|(_, w)| *w).collect();
                match parts.as_slice() {
                    [_, w, v, "->", t] => {
                        assigns.push((line, w.to_string(), v.to_string(), t.to_string()))
                    }
                    _ => {
                        return Err(
                            line.syntax(col, "expected `assign <world> <vertex> -> <vertex>`")
                        )
                    }
                }
            }
            "class" => {
                let p = number(line, words.get(1), "a player")?;
                let members = words[2..].iter().map(|(_, w)| w.to_string()).collect();
                classes.push((line, p, members));
            }
            other => return Err(line.syntax(col, format!("unknown directive `{other}`"))),
        }
    }

    let builder = builder.ok_or(CliError::MissingPlayers)?;
    let arena = builder.build().map_err(CliError::Core)?;

    let mut objectives: Vec<Option<ObjectiveFormula>> = vec![None; arena.num_players()];
    for (p, line, c, f) in objective_lines {
        if p >= arena.num_players() {
            return Err(line.syntax(line.words()[1].0, format!("no player {p}")));
        }
        if objectives[p].is_some() {
            return Err(line.syntax(
                line.words()[0].0,
                format!("duplicate objective for player {p}"),
            ));
        }
        objectives[p] = Some(formula_at(line, &arena, c, &f)?);
    }
    let objectives = objectives
        .into_iter()
        .enumerate()
        .map(|(p, f)| f.ok_or(CliError::MissingObjective(p)))
        .collect::<Result<Vec<_>, _>>()?;
    let objectives = ObjectiveProfile::new(&arena, objectives).map_err(CliError::Core)?;
    let (line, c, f) = spec_line.ok_or(CliError::MissingSpec)?;
    let spec = formula_at(line, &arena, c, &f)?;

    let model = if worlds.is_empty() {
        if let Some((line, ..)) = assigns.first() {
            return Err(line.syntax(0, "`assign` without any `world`"));
        }
        if let Some((line, ..)) = classes.first() {
            return Err(line.syntax(0, "`class` without any `world`"));
        }
        None
    } else {
        Some(build_model(&arena, &worlds, &assigns, &classes)?)
    };

    Ok(Problem {
        arena,
        objectives,
        spec,
        model,
    })
}

fn build_model(
    arena: &Arena,
    worlds: &[(String, usize)],
    assigns: &[(&Line<'_>, String, String, String)],
    classes: &[(&Line<'_>, usize, Vec<String>)],
) -> Result<EpistemicModel, CliError> {
    let index: HashMap<&str, usize> = worlds
        .iter()
        .enumerate()
        .map(|(i, (w, _))| (w.as_str(), i))
        .collect();
    let unknown = |line: &Line<'_>, name: &str| CliError::UnknownName {
        line: line.number,
        name: name.to_string(),
    };
    let mut choices: Vec<Vec<Option<VertexId>>> =
        vec![vec![None; arena.num_vertices()]; worlds.len()];
    for (line, w, v, t) in assigns {
        let wi = *index.get(w.as_str()).ok_or_else(|| unknown(line, w))?;
        let vi = arena.vertex(v).ok_or_else(|| unknown(line, v))?;
        let ti = arena.vertex(t).ok_or_else(|| unknown(line, t))?;
        if choices[wi][vi.0].replace(ti).is_some() {
            return Err(line.syntax(0, format!("vertex `{v}` assigned twice in world `{w}`")));
        }
    }
    let assignment = choices
        .into_iter()
        .map(|succ| {
            let succ = succ
                .into_iter()
                .enumerate()
                .map(|(v, s)| {
                    let v = VertexId(v);
                    match (s, arena.successors(v)) {
                        (Some(t), _) => Ok(t),
                        (None, [only]) => Ok(*only),
                        (None, _) => Err(CoreError::MissingChoice(arena.name(v).to_string())),
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
            PositionalProfile::new(arena, succ)
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(CliError::Core)?;
    let mut per_player: Vec<Vec<Vec<usize>>> = vec![Vec::new(); arena.num_players()];
    for (line, p, members) in classes {
        if *p >= arena.num_players() {
            return Err(line.syntax(0, format!("no player {p}")));
        }
        let ids = members
            .iter()
            .map(|m| {
                index
                    .get(m.as_str())
                    .copied()
                    .ok_or_else(|| unknown(line, m))
            })
            .collect::<Result<Vec<_>, _>>()?;
        per_player[*p].push(ids);
    }
    let names = worlds.iter().map(|(w, _)| w.clone()).collect();
    let frame = KripkeFrame::from_classes(names, per_player).map_err(CliError::Core)?;
    EpistemicModel::new(arena, frame, assignment).map_err(CliError::Core)
}

/// Canonical text of a problem; parsing it yields the same problem.
pub fn serialize(problem: &Problem) -> String {
    let a = &problem.arena;
    let mut out = String::new();
    writeln!(out, "players {}", a.num_players()).unwrap();
    for v in a.vertices() {
        let initial = if v == a.initial() { " initial" } else { "" };
        writeln!(
            out,
            "vertex {} owner {}{}",
            a.name(v),
            a.owner(v).0,
            initial
        )
        .unwrap();
    }
    for v in a.vertices() {
        for &w in a.successors(v) {
            writeln!(out, "edge {} {}", a.name(v), a.name(w)).unwrap();
        }
    }
    for (p, f) in problem.objectives.iter() {
        writeln!(out, "objective {} {}", p.0, render(a, f)).unwrap();
    }
    writeln!(out, "spec {}", render(a, &problem.spec)).unwrap();
    if let Some(m) = &problem.model {
        let fr = m.frame();
        for w in 0..fr.num_worlds() {
            writeln!(out, "world {}", fr.world_name(w)).unwrap();
        }
        for w in 0..fr.num_worlds() {
            let s = m.profile(w);
            for v in a.vertices().filter(|&v| a.successors(v).len() > 1) {
                writeln!(
                    out,
                    "assign {} {} -> {}",
                    fr.world_name(w),
                    a.name(v),
                    a.name(s.successor(v))
                )
                .unwrap();
            }
        }
        for p in a.players() {
            for cls in fr.classes(p).into_iter().filter(|c| c.len() > 1) {
                let names: Vec<&str> = cls.iter().map(|&w| fr.world_name(w)).collect();
                writeln!(out, "class {} {}", p.0, names.join(" ")).unwrap();
            }
        }
    }
    out
}

/// Reads a profile: lines `<vertex> -> <vertex>`; vertices with a single
/// successor may be omitted.
pub fn parse_profile(arena: &Arena, text: &str) -> Result<PositionalProfile, CliError> {
    let mut choice: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = Line {
            number: i + 1,
            text: raw.split('#').next().unwrap_or(""),
        };
        let words = line.words();
        if words.is_empty() {
            continue;
        }
        let parts: Vec<&str> = words.iter().map(|(_, w)| *w).collect();
        let (v, t) = match parts.as_slice() {
            [v, "->", t] => (*v, *t),
            _ => return Err(line.syntax(words[0].0, "expected `<vertex> -> <vertex>`")),
        };
        let unknown = |name: &str| CliError::UnknownName {
            line: line.number,
            name: name.to_string(),
        };
        let vi = arena.vertex(v).ok_or_else(|| unknown(v))?;
        let ti = arena.vertex(t).ok_or_else(|| unknown(t))?;
        if choice.insert(vi, ti).is_some() {
            return Err(line.syntax(words[0].0, format!("vertex `{v}` given twice")));
        }
    }
    let succ = arena
        .vertices()
        .map(|v| match (choice.get(&v), arena.successors(v)) {
            (Some(t), _) => Ok(*t),
            (None, [only]) => Ok(*only),
            (None, _) => Err(CoreError::MissingChoice(arena.name(v).to_string())),
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(CliError::Core)?;
    PositionalProfile::new(arena, succ).map_err(CliError::Core)
}

/// Profile in the `parse_profile` format, listing every vertex.
pub fn format_profile(arena: &Arena, profile: &PositionalProfile) -> String {
    let mut out = String::new();
    for v in arena.vertices() {
        writeln!(
            out,
            "{} -> {}",
            arena.name(v),
            arena.name(profile.successor(v))
        )
        .unwrap();
    }
    out
}

pub(crate) fn player_label(p: PlayerId) -> String {
    format!("player {}", p.0)
}
