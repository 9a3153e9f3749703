//! The named graphs (Petersen family and the three gadget graphs) and the
//! named sets of cycle pairs over them.
//!
//! Labelings are fixed edge lists. Petersen members are cross-checked against
//! ΔY moves from `K6` in the tests; gadget graphs carry exactly the edges used
//! by their Λ lists and by the minimality arguments (see [`GADGET_NOTE`]).

use crate::cycles::{enumerate_pairs, CyclePair, LambdaSet};
use crate::error::{Error, Result};
use crate::graph::{complete_graph, Edge, Graph, Vertex};
use crate::perm::VertexPermutation;

pub const GRAPH_NAMES: [&str; 10] = ["K6", "Q7", "Q8", "P7", "P8", "P9", "P10", "G8", "G9", "G10"];

pub const PETERSEN_FAMILY: [&str; 7] = ["K6", "Q7", "Q8", "P7", "P8", "P9", "P10"];

pub const GADGETS: [&str; 3] = ["G8", "G9", "G10"];

pub const LAMBDA_NAMES: [&str; 11] = [
    "Λ(G8)",
    "Λ(G9)",
    "Λ(G10)",
    "Γ⁽²⁾(K6)",
    "Γ⁽²⁾(Q7)",
    "Γ⁽²⁾(Q8)",
    "Γ⁽²⁾(P7)",
    "Γ⁽²⁾(P8)",
    "Γ⁽²⁾(P9)",
    "Γ⁽²⁾(P10)",
    "Λ′(K10)",
];

/// Metadata attached to gadget graphs.
pub const GADGET_NOTE: &str = "edge set is the union of edges used by the pair list and the \
minimality arguments; a drawing with extra edges pushes certificates forward unchanged";

fn k(n: Vertex) -> Vec<(Vertex, Vertex)> {
    (1..=n)
        .flat_map(|a| (a + 1..=n).map(move |b| (a, b)))
        .collect()
}

fn bipartite(a: &[Vertex], b: &[Vertex]) -> Vec<(Vertex, Vertex)> {
    a.iter()
        .flat_map(|&x| b.iter().map(move |&y| (x, y)))
        .collect()
}

fn star(center: Vertex, leaves: &[Vertex]) -> Vec<(Vertex, Vertex)> {
    leaves.iter().map(|&l| (center, l)).collect()
}

fn without(mut edges: Vec<(Vertex, Vertex)>, gone: &[(Vertex, Vertex)]) -> Vec<(Vertex, Vertex)> {
    edges.retain(|&(a, b)| !gone.iter().any(|&(x, y)| (x, y) == (a, b) || (y, x) == (a, b)));
    edges
}

fn cycle_edges(seq: &[Vertex]) -> Vec<(Vertex, Vertex)> {
    (0..seq.len())
        .map(|i| (seq[i], seq[(i + 1) % seq.len()]))
        .collect()
}

/// Canonical graph name for a user-supplied spelling (case-insensitive).
pub fn canonical_graph_name(name: &str) -> Option<&'static str> {
    GRAPH_NAMES
        .iter()
        .copied()
        .find(|n| n.eq_ignore_ascii_case(name.trim()))
}

pub fn catalog_graph(name: &str) -> Result<Graph> {
    let name = canonical_graph_name(name).ok_or_else(|| Error::UnknownName(name.to_string()))?;
    let mut e: Vec<(Vertex, Vertex)>;
    let n: Vertex;
    match name {
        "K6" => return complete_graph(6),
        "Q7" => {
            n = 7;
            e = without(k(6), &[(1, 2), (1, 3), (2, 3)]);
            e.extend(star(7, &[1, 2, 3]));
        }
        "Q8" => {
            n = 8;
            e = bipartite(&[1, 2, 3], &[4, 5, 6]);
            e.extend(star(7, &[1, 2, 3]));
            e.extend(star(8, &[4, 5, 6]));
        }
        "P7" => {
            n = 7;
            e = bipartite(&[1, 2, 3], &[4, 5, 6]);
            e.extend(star(7, &[1, 2, 3, 4, 5, 6]));
        }
        "P8" => {
            n = 8;
            e = without(bipartite(&[1, 2, 3], &[4, 5, 6]), &[(1, 6)]);
            e.extend(star(7, &[2, 3, 4, 5]));
            e.extend(star(8, &[1, 6, 7]));
        }
        "P9" => {
            n = 9;
            e = cycle_edges(&[1, 8, 6, 3, 9, 5]);
            e.extend(cycle_edges(&[2, 7, 4]));
            e.extend(star(2, &[5, 6]));
            e.extend(star(4, &[1, 3]));
            e.extend(star(7, &[8, 9]));
        }
        "P10" => {
            n = 10;
            e = cycle_edges(&[1, 8, 6, 3, 9, 5]);
            e.extend(star(2, &[5, 6, 10]));
            e.extend(star(4, &[1, 3, 10]));
            e.extend(star(7, &[8, 9, 10]));
        }
        "G8" => {
            n = 8;
            e = k(6);
            e.extend(star(7, &[1, 2, 3, 8]));
            e.extend(star(8, &[1, 2, 3]));
        }
        "G9" => {
            n = 9;
            e = bipartite(&[1, 2, 3], &[4, 5, 6]);
            e.extend(star(7, &[1, 2, 3, 8]));
            e.extend(star(8, &[1, 2, 3]));
            e.extend(star(9, &[4, 5, 6]));
        }
        "G10" => {
            n = 10;
            e = k(6);
            e.extend(star(7, &[1, 2, 3, 8]));
            e.extend(star(8, &[1, 2, 3]));
            e.extend(star(9, &[4, 5, 6, 10]));
            e.extend(star(10, &[4, 5, 6]));
        }
        _ => unreachable!(),
    }
    Graph::from_pairs(1..=n, &e)
}

pub fn is_gadget(name: &str) -> bool {
    canonical_graph_name(name).is_some_and(|n| GADGETS.contains(&n))
}

const LAMBDA_G8: [&str; 12] = [
    "[1 8 7 2 3]∪[4 5 6]",
    "[1 2 8 7 3]∪[4 5 6]",
    "[1 2 3 8 7]∪[4 5 6]",
    "[1 8 7 2 4]∪[3 5 6]",
    "[1 8 7 2 5]∪[4 3 6]",
    "[1 8 7 2 6]∪[4 5 3]",
    "[6 2 8 7 3]∪[4 5 1]",
    "[5 2 8 7 3]∪[4 1 6]",
    "[4 2 8 7 3]∪[1 5 6]",
    "[1 4 3 8 7]∪[2 5 6]",
    "[1 5 3 8 7]∪[4 2 6]",
    "[1 6 3 8 7]∪[4 5 2]",
];

const LAMBDA_G9: [&str; 9] = [
    "[1 8 7 2 6]∪[4 9 5 3]",
    "[1 8 7 2 4]∪[3 5 9 6]",
    "[1 8 7 2 5]∪[4 3 6 9]",
    "[6 2 8 7 3]∪[4 9 5 1]",
    "[4 2 8 7 3]∪[1 5 9 6]",
    "[5 2 8 7 3]∪[4 1 6 9]",
    "[1 6 3 8 7]∪[4 9 5 2]",
    "[1 4 3 8 7]∪[2 5 9 6]",
    "[1 5 3 8 7]∪[4 2 6 9]",
];

const LAMBDA_G10: [&str; 18] = [
    "[1 8 7 2 3]∪[4 10 9 5 6]",
    "[1 8 7 2 3]∪[4 5 10 9 6]",
    "[1 8 7 2 3]∪[4 5 6 10 9]",
    "[1 2 8 7 3]∪[4 10 9 5 6]",
    "[1 2 8 7 3]∪[4 5 10 9 6]",
    "[1 2 8 7 3]∪[4 5 6 10 9]",
    "[1 2 3 8 7]∪[4 10 9 5 6]",
    "[1 2 3 8 7]∪[4 5 10 9 6]",
    "[1 2 3 8 7]∪[4 5 6 10 9]",
    "[1 8 7 2 6]∪[4 10 9 5 3]",
    "[1 8 7 2 4]∪[3 5 10 9 6]",
    "[1 8 7 2 5]∪[4 3 6 10 9]",
    "[6 2 8 7 3]∪[4 10 9 5 1]",
    "[4 2 8 7 3]∪[1 5 10 9 6]",
    "[5 2 8 7 3]∪[4 1 6 10 9]",
    "[1 6 3 8 7]∪[4 10 9 5 2]",
    "[1 4 3 8 7]∪[2 5 10 9 6]",
    "[1 5 3 8 7]∪[4 2 6 10 9]",
];

fn parse_pairs(g: &Graph, list: &[&str]) -> Result<Vec<CyclePair>> {
    list.iter()
        .map(|s| {
            let p: CyclePair = s.parse()?;
            p.check_in(g)?;
            Ok(p)
        })
        .collect()
}

/// Canonical Λ-set name for a user-supplied spelling. Besides the exact names
/// this accepts ASCII forms such as `Lambda(G8)`, `Gamma2(P10)` and
/// `Lambda'(K10)`.
pub fn canonical_lambda_name(name: &str) -> Option<&'static str> {
    let s: String = name.trim().chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(n) = LAMBDA_NAMES.iter().copied().find(|n| *n == s) {
        return Some(n);
    }
    let lower = s.to_ascii_lowercase();
    let (head, rest) = lower.split_once('(')?;
    let inner = rest.strip_suffix(')')?;
    let upper = inner.to_ascii_uppercase();
    let graph = canonical_graph_name(inner).unwrap_or(upper.as_str());
    let want = match head {
        "lambda" | "l" => format!("Λ({graph})"),
        "lambda'" | "lambdaprime" | "l'" | "λ′" | "λ'" => format!("Λ′({graph})"),
        "gamma2" | "gamma" | "g2" | "γ⁽²⁾" | "γ2" => format!("Γ⁽²⁾({graph})"),
        "λ" => format!("Λ({graph})"),
        _ => return None,
    };
    LAMBDA_NAMES.iter().copied().find(|n| *n == want)
}

pub fn catalog_lambda(name: &str) -> Result<LambdaSet> {
    let canon = canonical_lambda_name(name).ok_or_else(|| Error::UnknownName(name.to_string()))?;
    match canon {
        "Λ(G8)" | "Λ(G9)" | "Λ(G10)" => {
            let gname = &canon[3..canon.len() - 1];
            let g = catalog_graph(gname)?;
            let list: &[&str] = match gname {
                "G8" => &LAMBDA_G8,
                "G9" => &LAMBDA_G9,
                _ => &LAMBDA_G10,
            };
            let pairs = parse_pairs(&g, list)?;
            LambdaSet::new(canon, g, pairs)
        }
        "Λ′(K10)" => {
            let p10 = catalog_graph("P10")?;
            let k10 = complete_graph(10)?;
            let pairs = enumerate_pairs(&p10, None, false);
            LambdaSet::new(canon, k10, pairs)
        }
        _ => {
            let gname = canon
                .strip_prefix("Γ⁽²⁾(")
                .and_then(|s| s.strip_suffix(')'))
                .expect("Γ⁽²⁾ name");
            let g = catalog_graph(gname)?;
            let pairs = enumerate_pairs(&g, None, false);
            LambdaSet::new(canon, g, pairs)
        }
    }
}

/// The Λ set naturally attached to a catalog graph: `Γ⁽²⁾` for Petersen
/// members, the listed Λ for gadgets.
pub fn default_lambda(graph: &str) -> Result<LambdaSet> {
    let g = canonical_graph_name(graph).ok_or_else(|| Error::UnknownName(graph.to_string()))?;
    if GADGETS.contains(&g) {
        catalog_lambda(&format!("Λ({g})"))
    } else {
        catalog_lambda(&format!("Γ⁽²⁾({g})"))
    }
}

/// Facts stated about a catalog graph that its labeling must satisfy.
#[derive(Clone, Debug)]
pub struct QuotedFacts {
    pub graph: &'static str,
    /// Pairs named in the arguments; each must be a disjoint pair of the graph.
    pub pairs: &'static [&'static str],
    /// Generators named in the arguments; each must be an automorphism.
    pub generators: &'static [&'static str],
    /// `(e, f, pairs)`: exactly these members of the default Λ set put `e`
    /// and `f` in different components.
    pub separations: &'static [(&'static str, &'static str, &'static [&'static str])],
}

pub const QUOTED_FACTS: [QuotedFacts; 10] = [
    QuotedFacts {
        graph: "K6",
        pairs: &["[1 3 5]∪[2 4 6]"],
        generators: &[],
        separations: &[],
    },
    QuotedFacts {
        graph: "Q7",
        pairs: &["[1 7 3 5]∪[2 4 6]"],
        generators: &["(1 2 3)", "(4 5 6)"],
        separations: &[],
    },
    QuotedFacts {
        graph: "Q8",
        pairs: &["[1 7 3 5]∪[2 4 8 6]"],
        generators: &["(1 2 3)", "(4 5 6)"],
        separations: &[],
    },
    QuotedFacts {
        graph: "P7",
        pairs: &["[1 5 2 6]∪[7 3 4]"],
        generators: &["(1 2 3)", "(4 5 6)"],
        separations: &[],
    },
    QuotedFacts {
        graph: "P8",
        pairs: &["[1 5 2 6 8]∪[7 3 4]", "[8 1 5 7]∪[4 2 6 3]"],
        generators: &["(2 3)", "(4 5)", "(1 6)(3 4)(2 5)"],
        separations: &[("1-5", "3-4", &["[1 5 2 6 8]∪[7 3 4]", "[8 1 5 7]∪[4 2 6 3]"])],
    },
    QuotedFacts {
        graph: "P9",
        pairs: &["[1 8 6 3 4]∪[5 2 7 9]", "[1 8 6 3 9 5]∪[2 7 4]"],
        generators: &["(1 6 9)(8 3 5)(2 7 4)", "(4 7 2)(1 8 6 3 9 5)"],
        separations: &[("2-7", "6-8", &["[1 8 6 3 4]∪[5 2 7 9]", "[1 8 6 3 9 5]∪[2 7 4]"])],
    },
    QuotedFacts {
        graph: "P10",
        pairs: &["[1 8 6 3 4]∪[5 2 10 7 9]"],
        generators: &["(1 6 9)(8 3 5)(2 7 4)", "(4 7 2)(1 8 6 3 9 5)"],
        separations: &[],
    },
    QuotedFacts {
        graph: "G8",
        pairs: &["[1 5 3 8 7]∪[4 2 6]", "[1 2 3 8 7]∪[4 5 6]"],
        generators: &["(1 2 3)", "(4 5 6)"],
        separations: &[("3-8", "4-6", &["[1 5 3 8 7]∪[4 2 6]", "[1 2 3 8 7]∪[4 5 6]"])],
    },
    QuotedFacts {
        graph: "G9",
        pairs: &["[1 5 3 8 7]∪[4 2 6 9]"],
        generators: &["(1 2 3)", "(4 5 6)"],
        separations: &[],
    },
    QuotedFacts {
        graph: "G10",
        pairs: &["[1 5 3 8 7]∪[4 2 6 10 9]", "[1 2 3 8 7]∪[4 5 6 10 9]"],
        generators: &["(1 2 3)", "(4 5 6)"],
        separations: &[(
            "6-10",
            "3-8",
            &["[1 5 3 8 7]∪[4 2 6 10 9]", "[1 2 3 8 7]∪[4 5 6 10 9]"],
        )],
    },
];

pub fn quoted_facts(graph: &str) -> Option<&'static QuotedFacts> {
    let g = canonical_graph_name(graph)?;
    QUOTED_FACTS.iter().find(|f| f.graph == g)
}

/// Checks every quoted fact of `facts` against the catalog; returns the list
/// of violations (empty on success).
pub fn check_quoted_facts(facts: &QuotedFacts) -> Result<Vec<String>> {
    let g = catalog_graph(facts.graph)?;
    let lam = default_lambda(facts.graph)?;
    let mut problems = Vec::new();
    for s in facts.pairs {
        match s.parse::<CyclePair>() {
            Ok(p) if p.check_in(&g).is_ok() => {
                if !lam.contains(&p) {
                    problems.push(format!("{s} is not in {}", lam.name()));
                }
            }
            _ => problems.push(format!("{s} is not a disjoint cycle pair of {}", facts.graph)),
        }
    }
    for s in facts.generators {
        match VertexPermutation::from_cycles(s, g.vertices()) {
            Ok(p) if p.is_automorphism_of(&g) => {}
            _ => problems.push(format!("{s} is not an automorphism of {}", facts.graph)),
        }
    }
    for (e, f, expected) in facts.separations {
        let (e, f): (Edge, Edge) = (e.parse()?, f.parse()?);
        let found: Vec<&CyclePair> = lam.pairs().iter().filter(|p| p.separates(e, f)).collect();
        let mut want = expected
            .iter()
            .map(|s| s.parse::<CyclePair>())
            .collect::<Result<Vec<_>>>()?;
        want.sort();
        if found.into_iter().cloned().collect::<Vec<_>>() != want {
            problems.push(format!(
                "pairs separating {e} and {f} in {} differ from the quoted ones",
                lam.name()
            ));
        }
    }
    Ok(problems)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_counts() {
        for (name, m) in [
            ("K6", 15),
            ("Q7", 15),
            ("Q8", 15),
            ("P7", 15),
            ("P8", 15),
            ("P9", 15),
            ("P10", 15),
            ("G8", 22),
            ("G9", 19),
            ("G10", 29),
        ] {
            assert_eq!(catalog_graph(name).unwrap().edge_count(), m, "{name}");
        }
        assert!(matches!(catalog_graph("K7"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn degree_sequences() {
        assert_eq!(
            catalog_graph("Q7").unwrap().degree_sequence(),
            vec![3, 4, 4, 4, 5, 5, 5]
        );
        assert_eq!(
            catalog_graph("P7").unwrap().degree_sequence(),
            vec![4, 4, 4, 4, 4, 4, 6]
        );
        assert!(catalog_graph("P10")
            .unwrap()
            .degree_sequence()
            .iter()
            .all(|&d| d == 3));
    }

    #[test]
    fn name_aliases() {
        assert_eq!(canonical_lambda_name("Lambda(G8)"), Some("Λ(G8)"));
        assert_eq!(canonical_lambda_name("gamma2(p10)"), Some("Γ⁽²⁾(P10)"));
        assert_eq!(canonical_lambda_name("Lambda'(K10)"), Some("Λ′(K10)"));
        assert_eq!(canonical_lambda_name("Λ(G9)"), Some("Λ(G9)"));
        assert_eq!(canonical_lambda_name("Lambda(K6)"), None);
        assert!(catalog_lambda("Λ(G11)").is_err());
    }

    #[test]
    fn listed_lambda_sizes() {
        let g8 = catalog_lambda("Λ(G8)").unwrap();
        assert_eq!(g8.len(), 12);
        assert!(g8
            .pairs()
            .iter()
            .all(|p| p.type_pq() == (5, 3) && p.is_hamiltonian(g8.host())));
        let g10 = catalog_lambda("Λ(G10)").unwrap();
        assert_eq!(g10.len(), 18);
        assert!(g10.pairs().iter().all(|p| p.type_pq() == (5, 5)));
        assert_eq!(catalog_lambda("Λ(G9)").unwrap().len(), 9);
        assert_eq!(catalog_lambda("Γ⁽²⁾(P10)").unwrap().len(), 6);
    }
}
