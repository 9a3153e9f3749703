//! Witness plans for the catalog graphs.

use crate::catalog::{canonical_graph_name, catalog_graph, default_lambda, quoted_facts};
use crate::certificates::{build_battery, MinimalityBattery};
use crate::cycles::{CyclePair, LambdaSet};
use crate::diagram::{CrossingKey, Diagram};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::perm::VertexPermutation;
use crate::synth::{FlipGoal, SynthGoal};

/// What a shipped witness diagram of a catalog graph must show.
#[derive(Clone, Debug)]
pub struct WitnessPlan {
    pub name: &'static str,
    pub graph: Graph,
    pub lambda: LambdaSet,
    pub designated: CyclePair,
    pub flip: Option<FlipGoal>,
}

impl WitnessPlan {
    pub fn goal(&self) -> SynthGoal {
        SynthGoal {
            graph: self.graph.clone(),
            pairs: self.lambda.pairs().to_vec(),
            designated: self.designated.clone(),
            flip: self.flip.clone(),
        }
    }

    /// Designated pairs: the base one first, then the one after the flip.
    pub fn designated_pairs(&self) -> Vec<&CyclePair> {
        let mut v = vec![&self.designated];
        if let Some(f) = &self.flip {
            v.push(&f.designated);
        }
        v
    }
}

pub fn witness_plan(name: &str) -> Result<WitnessPlan> {
    let canon = canonical_graph_name(name).ok_or_else(|| Error::UnknownName(name.to_string()))?;
    let facts = quoted_facts(canon).ok_or_else(|| Error::UnknownName(name.to_string()))?;
    let graph = catalog_graph(canon)?;
    let lambda = default_lambda(canon)?;
    let parse = |s: &str| -> Result<CyclePair> {
        let p: CyclePair = s.parse()?;
        p.check_in(&graph)?;
        Ok(p)
    };
    let designated = parse(facts.pairs[0])?;
    let flip = match facts.separations.first() {
        Some((e, f, _)) => Some(FlipGoal {
            edges: [e.parse::<Edge>()?, f.parse::<Edge>()?],
            designated: parse(facts.pairs[1])?,
        }),
        None => None,
    };
    Ok(WitnessPlan {
        name: canon,
        graph,
        lambda,
        designated,
        flip,
    })
}

/// Generators named for a catalog graph, as permutations of its vertex set.
pub fn quoted_generators(name: &str) -> Result<Vec<VertexPermutation>> {
    let canon = canonical_graph_name(name).ok_or_else(|| Error::UnknownName(name.to_string()))?;
    let g = catalog_graph(canon)?;
    let facts = quoted_facts(canon).ok_or_else(|| Error::UnknownName(name.to_string()))?;
    facts
        .generators
        .iter()
        .map(|s| VertexPermutation::from_cycles(s, g.vertices()))
        .collect()
}

/// Battery for a catalog witness: the unflipped diagram serves the base
/// designated pair, the flipped one serves the other. The quoted generators
/// are tried first, then the full automorphism group.
pub fn catalog_battery(
    plan: &WitnessPlan,
    diagram: &Diagram,
    flip: Option<&CrossingKey>,
) -> Result<MinimalityBattery> {
    let mut designated = vec![(plan.designated.clone(), Vec::new())];
    if let (Some(f), Some(k)) = (&plan.flip, flip) {
        designated.push((f.designated.clone(), vec![k.clone()]));
    }
    let gens = quoted_generators(plan.name)?;
    match build_battery(&plan.lambda, diagram, &designated, &gens) {
        Ok(b) => Ok(b),
        Err(_) if !gens.is_empty() => build_battery(&plan.lambda, diagram, &designated, &[]),
        Err(e) => Err(e),
    }
}
