//! Line-oriented text format for a board, its stones and its ruleset.
//!
//! ```text
//! ruleset D=1,2 S=        # empty after '=' means the empty set
//! variant distance        # or: variant bigraph
//! vertex <name> [colour=B|R] [owner=L|R]
//! edge <name> <name>
//! ```
//!
//! `owner=` is required on every vertex iff the variant is `bigraph`. The
//! canonical form written by [`serialize`] lists the ruleset, the variant,
//! vertices in index order, then edges sorted by endpoint index.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rules::{Bipartition, Colour, Player, Position, Ruleset, Variant};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameFile {
    pub graph: Graph,
    pub position: Position,
    pub ruleset: Ruleset,
}

pub fn parse_graph(text: &str) -> Result<GameFile> {
    let mut graph = Graph::new();
    let mut colours: Vec<Option<Colour>> = Vec::new();
    let mut owners: Vec<(usize, Option<Player>)> = Vec::new();
    let mut ruleset: Option<Ruleset> = None;
    let mut variant: Option<Variant> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        let mut toks = line.split_whitespace();
        let Some(keyword) = toks.next() else {
            continue;
        };
        let rest: Vec<&str> = toks.collect();
        let at = |e: Error| e.at_line(line_no);
        match keyword {
            "ruleset" => {
                if ruleset.is_some() {
                    return Err(at(Error::Syntax("duplicate ruleset line".into())));
                }
                ruleset = Some(rest.join(" ").parse().map_err(at)?);
            }
            "variant" => {
                if variant.is_some() {
                    return Err(at(Error::Syntax("duplicate variant line".into())));
                }
                variant = Some(match rest.as_slice() {
                    ["distance"] => Variant::DistanceGame,
                    ["bigraph"] => Variant::BiGraph,
                    _ => return Err(at(Error::Syntax(format!("bad variant `{}`", rest.join(" "))))),
                });
            }
            "vertex" => {
                let Some((name, attrs)) = rest.split_first() else {
                    return Err(at(Error::Syntax("vertex line needs a name".into())));
                };
                let mut colour = None;
                let mut owner = None;
                for attr in attrs {
                    match attr.split_once('=') {
                        Some(("colour", "B")) => colour = Some(Colour::Blue),
                        Some(("colour", "R")) => colour = Some(Colour::Red),
                        Some(("colour", tok)) => {
                            return Err(at(Error::Syntax(format!("invalid colour token `{tok}`"))))
                        }
                        Some(("owner", "L")) => owner = Some(Player::Left),
                        Some(("owner", "R")) => owner = Some(Player::Right),
                        Some(("owner", tok)) => {
                            return Err(at(Error::Syntax(format!("invalid owner token `{tok}`"))))
                        }
                        _ => return Err(at(Error::Syntax(format!("unknown attribute `{attr}`")))),
                    }
                }
                graph.add_vertex(name).map_err(at)?;
                colours.push(colour);
                owners.push((line_no, owner));
            }
            "edge" => {
                let [a, b] = rest.as_slice() else {
                    return Err(at(Error::Syntax("edge line needs exactly two names".into())));
                };
                let a = graph.id(a).map_err(at)?;
                let b = graph.id(b).map_err(at)?;
                graph.add_edge(a, b).map_err(at)?;
            }
            other => return Err(at(Error::Syntax(format!("unknown keyword `{other}`")))),
        }
    }

    let variant = variant.unwrap_or(Variant::DistanceGame);
    let ruleset = match variant {
        Variant::DistanceGame => {
            if let Some((line, _)) = owners.iter().find(|(_, o)| o.is_some()) {
                return Err(Error::Syntax("owner= only allowed with variant bigraph".into()).at_line(*line));
            }
            ruleset.unwrap_or_else(|| Ruleset::distance_game([], []).unwrap())
        }
        Variant::BiGraph => {
            if let Some(rs) = &ruleset {
                if !rs.same_sets(&Ruleset::node_kayles()) {
                    return Err(Error::Syntax("variant bigraph requires D=1 S=1".into()));
                }
            }
            let mut sides = Vec::with_capacity(owners.len());
            for (line, owner) in owners {
                match owner {
                    Some(p) => sides.push(p),
                    None => {
                        return Err(Error::Syntax("variant bigraph needs owner= on every vertex".into())
                            .at_line(line))
                    }
                }
            }
            Ruleset::bigraph_node_kayles(Bipartition::new(sides))
        }
    };
    Ok(GameFile {
        graph,
        position: Position::from_cells(colours),
        ruleset,
    })
}

pub fn serialize(g: &Graph, pos: &Position, rs: &Ruleset) -> String {
    let mut out = String::new();
    writeln!(out, "ruleset {rs}").unwrap();
    let own = rs.ownership();
    writeln!(out, "variant {}", if own.is_some() { "bigraph" } else { "distance" }).unwrap();
    for v in g.vertices() {
        write!(out, "vertex {}", g.name(v)).unwrap();
        match pos.cells().get(v.0).copied().flatten() {
            Some(Colour::Blue) => out.push_str(" colour=B"),
            Some(Colour::Red) => out.push_str(" colour=R"),
            None => {}
        }
        if let Some(own) = own {
            out.push_str(match own.side(v) {
                Player::Left => " owner=L",
                Player::Right => " owner=R",
            });
        }
        out.push('\n');
    }
    for (u, v) in g.edges() {
        writeln!(out, "edge {} {}", g.name(u), g.name(v)).unwrap();
    }
    out
}

impl GameFile {
    pub fn serialize(&self) -> String {
        serialize(&self.graph, &self.position, &self.ruleset)
    }
}
