//! Checkable certificates for linked and minimally linked sets.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{catalog_graph, default_lambda, PETERSEN_FAMILY};
use crate::cycles::{enumerate_pairs, CyclePair, LambdaSet};
use crate::diagram::{CrossingKey, Diagram};
use crate::embedding::{first_generic_projection, mix_seed, random_linear_embedding};
use crate::error::{Error, Result};
use crate::extend::extend_diagram;
use crate::graph::{Edge, Graph, Vertex};
use crate::linking::SplitCertificate;
use crate::minor::{psi_pair_map, vertex_splittings, MinorMap, SplitKind};
use crate::perm::{apply_permutation, automorphism_group, generate_group, VertexPermutation};

pub type EdgePair = (Edge, Edge);

/// For every pair of disjoint edges, the number of listed pairs that put the
/// two edges in different components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityTable {
    host: Graph,
    lambda: String,
    counts: BTreeMap<EdgePair, usize>,
}

impl ParityTable {
    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn lambda_name(&self) -> &str {
        &self.lambda
    }

    pub fn counts(&self) -> &BTreeMap<EdgePair, usize> {
        &self.counts
    }

    pub fn count(&self, e: Edge, f: Edge) -> Option<usize> {
        let key = if e <= f { (e, f) } else { (f, e) };
        self.counts.get(&key).copied()
    }

    pub fn all_even(&self) -> bool {
        self.counts.values().all(|c| c % 2 == 0)
    }

    pub fn odd_pairs(&self) -> Vec<(EdgePair, usize)> {
        self.counts
            .iter()
            .filter(|(_, c)| *c % 2 == 1)
            .map(|(k, c)| (*k, *c))
            .collect()
    }

    /// Sorted `(edge pair, count)` list; the serialized form in bundles.
    pub fn digest(&self) -> Vec<(EdgePair, usize)> {
        self.counts.iter().map(|(k, c)| (*k, *c)).collect()
    }
}

fn check_host(g: &Graph, lam: &LambdaSet) -> Result<()> {
    if lam.host() != g {
        return Err(Error::HostMismatch(format!(
            "{} is not a set of pairs of the given graph",
            lam.name()
        )));
    }
    Ok(())
}

pub fn parity_table(g: &Graph, lam: &LambdaSet) -> Result<ParityTable> {
    check_host(g, lam)?;
    let edges: Vec<Edge> = g.edges().collect();
    let mut counts = BTreeMap::new();
    for (i, e) in edges.iter().enumerate() {
        for f in &edges[i + 1..] {
            if e.is_disjoint_from(f) {
                counts.insert((*e, *f), 0usize);
            }
        }
    }
    for p in lam.pairs() {
        let [a, b] = p.components();
        for e in a.edges() {
            for f in b.edges() {
                let key = if e <= f { (e, f) } else { (f, e) };
                *counts.get_mut(&key).expect("separated edges are disjoint") += 1;
            }
        }
    }
    Ok(ParityTable {
        host: g.clone(),
        lambda: lam.name().to_string(),
        counts,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairVerdict {
    pub pair: CyclePair,
    pub lk: i64,
    pub split: SplitCertificate,
}

/// Linking numbers and split certificates of every listed pair in one diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessProfile {
    pub verdicts: Vec<PairVerdict>,
    /// Σ lk over the listed pairs, reduced mod 2.
    pub sigma: u8,
    /// Pairs with lk = ±1.
    pub hopf: Vec<CyclePair>,
    /// Exactly one pair with lk = ±1 and every other pair split-certified.
    pub strict: bool,
}

pub fn witness_profile(d: &Diagram, lam: &LambdaSet) -> Result<WitnessProfile> {
    check_host(d.graph(), lam)?;
    let verdicts: Vec<PairVerdict> = lam
        .pairs()
        .iter()
        .map(|p| {
            Ok(PairVerdict {
                pair: p.clone(),
                lk: d.linking_number(p)?,
                split: d.split_certify(p)?,
            })
        })
        .collect::<Result<_>>()?;
    let sum: i64 = verdicts.iter().map(|v| v.lk).sum();
    let hopf: Vec<CyclePair> = verdicts
        .iter()
        .filter(|v| v.lk.abs() == 1)
        .map(|v| v.pair.clone())
        .collect();
    let strict = hopf.len() == 1
        && verdicts
            .iter()
            .all(|v| v.pair == hopf[0] || v.split.is_split());
    Ok(WitnessProfile {
        verdicts,
        sigma: sum.rem_euclid(2) as u8,
        hopf,
        strict,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LinkedReport {
    pub parity_even: bool,
    pub odd_pairs: Vec<(EdgePair, usize)>,
    pub profile: WitnessProfile,
    pub passed: bool,
}

/// Runs every check of the linkedness criterion and reports the outcome.
pub fn check_linked(g: &Graph, lam: &LambdaSet, witness: &Diagram) -> Result<LinkedReport> {
    check_host(g, lam)?;
    if witness.graph() != g {
        return Err(Error::HostMismatch("witness is drawn on a different graph".into()));
    }
    let table = parity_table(g, lam)?;
    let profile = witness_profile(witness, lam)?;
    let parity_even = table.all_even();
    Ok(LinkedReport {
        parity_even,
        odd_pairs: table.odd_pairs(),
        passed: parity_even && profile.sigma == 1,
        profile,
    })
}

/// Evidence that every spatial embedding has a nonsplittable pair in the set.
#[derive(Clone, Debug)]
pub struct LinkednessCertificate {
    parity: ParityTable,
    witness: Diagram,
    witness_sum: u8,
    profile: WitnessProfile,
}

impl LinkednessCertificate {
    pub fn parity(&self) -> &ParityTable {
        &self.parity
    }

    pub fn witness(&self) -> &Diagram {
        &self.witness
    }

    pub fn witness_sum(&self) -> u8 {
        self.witness_sum
    }

    pub fn profile(&self) -> &WitnessProfile {
        &self.profile
    }

    /// Recomputes the certificate from raw data and compares.
    pub fn recheck(&self, g: &Graph, lam: &LambdaSet) -> Result<()> {
        let again = verify_linked(g, lam, &self.witness)?;
        if again.parity != self.parity || again.profile != self.profile {
            return Err(Error::Verification("certificate does not match a fresh computation".into()));
        }
        Ok(())
    }
}

pub fn verify_linked(g: &Graph, lam: &LambdaSet, witness: &Diagram) -> Result<LinkednessCertificate> {
    let report = check_linked(g, lam, witness)?;
    if !report.parity_even {
        let list: Vec<String> = report
            .odd_pairs
            .iter()
            .map(|((e, f), c)| format!("{{{e}, {f}}}: {c}"))
            .collect();
        return Err(Error::Verification(format!(
            "parity failure for {}: {}",
            lam.name(),
            list.join(", ")
        )));
    }
    if report.profile.sigma != 1 {
        return Err(Error::Verification(format!(
            "witness sum of linking numbers over {} is even",
            lam.name()
        )));
    }
    Ok(LinkednessCertificate {
        parity: parity_table(g, lam)?,
        witness: witness.clone(),
        witness_sum: report.profile.sigma,
        profile: report.profile,
    })
}

/// One line of a minimality battery: after the flips, `sigma` carries
/// `target` onto a pair of the diagram that is a Hopf link.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSpec {
    pub target: CyclePair,
    pub sigma: VertexPermutation,
    #[serde(default)]
    pub flips: Vec<CrossingKey>,
}

#[derive(Clone, Debug)]
pub struct MinimalityBattery {
    lambda: LambdaSet,
    base: Diagram,
    specs: Vec<WitnessSpec>,
}

impl MinimalityBattery {
    pub fn new(lambda: LambdaSet, base: Diagram, specs: Vec<WitnessSpec>) -> Result<Self> {
        if base.graph() != lambda.host() {
            return Err(Error::HostMismatch("base diagram is drawn on a different graph".into()));
        }
        Ok(MinimalityBattery { lambda, base, specs })
    }

    pub fn lambda(&self) -> &LambdaSet {
        &self.lambda
    }

    pub fn base(&self) -> &Diagram {
        &self.base
    }

    pub fn specs(&self) -> &[WitnessSpec] {
        &self.specs
    }
}

/// Builds a battery by searching the group generated by `generators` (the
/// full automorphism group when empty) for permutations that carry each
/// pair onto one of the designated pairs. Designated pairs are tried in
/// order; each comes with the flips that make it the Hopf pair.
pub fn build_battery(
    lam: &LambdaSet,
    base: &Diagram,
    designated: &[(CyclePair, Vec<CrossingKey>)],
    generators: &[VertexPermutation],
) -> Result<MinimalityBattery> {
    let g = lam.host();
    let group = if generators.is_empty() {
        automorphism_group(g)?
    } else {
        generate_group(generators, g.vertices())?
    };
    let preserving: Vec<&VertexPermutation> = group
        .iter()
        .filter(|s| {
            s.is_automorphism_of(g)
                && lam
                    .pairs()
                    .iter()
                    .all(|p| apply_permutation(s, p).is_ok_and(|q| lam.contains(&q)))
        })
        .collect();
    let mut specs = Vec::with_capacity(lam.len());
    for p in lam.pairs() {
        let found = designated.iter().find_map(|(d, flips)| {
            preserving
                .iter()
                .find(|s| apply_permutation(s, p).is_ok_and(|q| q == *d))
                .map(|s| WitnessSpec {
                    target: p.clone(),
                    sigma: (*s).clone(),
                    flips: flips.clone(),
                })
        });
        match found {
            Some(spec) => specs.push(spec),
            None => {
                return Err(Error::Verification(format!(
                    "{p} is not carried onto a designated pair by the group"
                )))
            }
        }
    }
    MinimalityBattery::new(lam.clone(), base.clone(), specs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecFailure {
    pub pair: CyclePair,
    pub image: CyclePair,
    pub verdict: SplitCertificate,
    pub lk: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecReport {
    pub target: CyclePair,
    pub image: CyclePair,
    pub flips: usize,
    pub lk: i64,
    pub failures: Vec<SpecFailure>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalReport {
    pub lambda: String,
    pub specs: Vec<SpecReport>,
    pub passed: bool,
}

fn check_battery_shape(g: &Graph, lam: &LambdaSet, battery: &MinimalityBattery) -> Result<()> {
    check_host(g, lam)?;
    if battery.lambda.pairs() != lam.pairs() {
        return Err(Error::InvalidArgument(format!(
            "battery is for a different set than {}",
            lam.name()
        )));
    }
    if battery.base.graph() != g {
        return Err(Error::HostMismatch("battery diagram is drawn on a different graph".into()));
    }
    let targets: BTreeSet<&CyclePair> = battery.specs.iter().map(|s| &s.target).collect();
    if targets.len() != battery.specs.len() {
        return Err(Error::InvalidArgument("battery lists a target twice".into()));
    }
    if let Some(p) = lam.pairs().iter().find(|p| !targets.contains(p)) {
        return Err(Error::InvalidArgument(format!("battery has no spec for {p}")));
    }
    if let Some(p) = targets.iter().find(|p| !lam.contains(p)) {
        return Err(Error::InvalidArgument(format!("battery target {p} is not in {}", lam.name())));
    }
    for s in &battery.specs {
        if s.sigma.domain().ne(g.vertices()) || !s.sigma.is_automorphism_of(g) {
            return Err(Error::Permutation(format!(
                "{} is not an automorphism of the graph",
                s.sigma
            )));
        }
        for k in &s.flips {
            if battery.base.crossing(k).is_none() {
                return Err(Error::CrossingData(format!("flip key {k} is not a crossing")));
            }
        }
    }
    Ok(())
}

pub fn verify_minimal(g: &Graph, lam: &LambdaSet, battery: &MinimalityBattery) -> Result<MinimalReport> {
    check_battery_shape(g, lam, battery)?;
    let mut diagrams: BTreeMap<&[CrossingKey], Diagram> = BTreeMap::new();
    for s in &battery.specs {
        if !diagrams.contains_key(s.flips.as_slice()) {
            diagrams.insert(&s.flips, battery.base.flip_all(&s.flips)?);
        }
    }
    let specs: Vec<SpecReport> = battery
        .specs
        .par_iter()
        .map(|s| {
            let d = &diagrams[s.flips.as_slice()];
            let image = apply_permutation(&s.sigma, &s.target)?;
            let lk = d.linking_number(&image)?;
            let mut failures = Vec::new();
            for p in lam.pairs().iter().filter(|p| **p != s.target) {
                let q = apply_permutation(&s.sigma, p)?;
                let verdict = d.split_certify(&q)?;
                if !verdict.is_split() {
                    failures.push(SpecFailure {
                        pair: p.clone(),
                        lk: d.linking_number(&q)?,
                        image: q,
                        verdict,
                    });
                }
            }
            let passed = lk % 2 != 0 && failures.is_empty();
            Ok(SpecReport {
                target: s.target.clone(),
                image,
                flips: s.flips.len(),
                lk,
                failures,
                passed,
            })
        })
        .collect::<Result<_>>()?;
    let passed = specs.iter().all(|s| s.passed);
    Ok(MinimalReport {
        lambda: lam.name().to_string(),
        specs,
        passed,
    })
}

/// Extends an automorphism of the minor along the expansion paths.
pub fn extend_permutation(sigma: &VertexPermutation, m: &MinorMap) -> Result<VertexPermutation> {
    let mut map: BTreeMap<Vertex, Vertex> = m.host().vertices().map(|v| (v, v)).collect();
    let img = |v: Vertex| -> Result<Vertex> {
        let w = sigma
            .apply(v)
            .ok_or_else(|| Error::Permutation(format!("{v} is outside the domain of {sigma}")))?;
        Ok(m.vertex_image()[&w])
    };
    for (v, w) in m.vertex_image() {
        map.insert(*w, img(*v)?);
    }
    for (e, path) in m.expansion() {
        let (a, b) = (e.lo(), e.hi());
        let (sa, sb) = (sigma.apply(a).unwrap_or(a), sigma.apply(b).unwrap_or(b));
        let target = m
            .oriented_path(sa, sb)
            .ok_or_else(|| Error::Permutation(format!("{sigma} does not map {e} to an edge")))?;
        if target.len() != path.len() {
            return Err(Error::Permutation(format!(
                "{sigma} maps {e} to an edge with a path of different length"
            )));
        }
        for (x, y) in path.iter().zip(&target) {
            map.insert(*x, *y);
        }
    }
    VertexPermutation::new(map)
}

/// Pushes certificates through a minor map and re-verifies them on the host.
pub fn lift_battery(
    m: &MinorMap,
    cert: &LinkednessCertificate,
    battery: &MinimalityBattery,
) -> Result<(LinkednessCertificate, MinimalityBattery)> {
    let lam = battery.lambda();
    let host = m.host();
    let pairs = lam
        .pairs()
        .iter()
        .map(|p| psi_pair_map(m, p))
        .collect::<Result<Vec<_>>>()?;
    let name = if m.is_identity() {
        lam.name().to_string()
    } else {
        format!("Ψ({})", lam.name())
    };
    let host_lam = LambdaSet::new(name, host.clone(), pairs)?;
    if host_lam.len() != lam.len() {
        return Err(Error::Verification("lifted set lost pairs".into()));
    }
    let base = extend_diagram(battery.base(), m)?;
    let witness = if cert.witness() == battery.base() {
        base.clone()
    } else {
        extend_diagram(cert.witness(), m)?
    };
    let by_location: BTreeMap<_, _> = base.crossings().iter().map(|c| (&c.location, &c.key)).collect();
    let specs = battery
        .specs()
        .iter()
        .map(|s| {
            let flips = s
                .flips
                .iter()
                .map(|k| {
                    let loc = &battery.base().crossing(k).expect("validated").location;
                    by_location
                        .get(loc)
                        .map(|k| (*k).clone())
                        .ok_or_else(|| Error::CrossingData(format!("flip {k} has no lifted crossing")))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(WitnessSpec {
                target: psi_pair_map(m, &s.target)?,
                sigma: extend_permutation(&s.sigma, m)?,
                flips,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let lifted = MinimalityBattery::new(host_lam.clone(), base, specs)?;
    let lifted_cert = verify_linked(host, &host_lam, &witness)?;
    let report = verify_minimal(host, &host_lam, &lifted)?;
    if !report.passed {
        return Err(Error::Verification(format!(
            "lifted battery for {} fails on the host",
            host_lam.name()
        )));
    }
    Ok((lifted_cert, lifted))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingRow {
    pub vertex: Vertex,
    pub keep: Vec<Vertex>,
    pub moved: Vec<Vertex>,
    pub count: usize,
    pub increases: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingReport {
    pub graph: String,
    pub base_count: usize,
    pub rows: Vec<SplittingRow>,
    pub passed: bool,
}

/// Compares |Γ⁽²⁾| of a Petersen family graph with that of each of its
/// non-trivial vertex splittings at vertices of degree at least 4.
pub fn splitting_count_check(name: &str) -> Result<SplittingReport> {
    let g = catalog_graph(name)?;
    let canon = PETERSEN_FAMILY
        .iter()
        .find(|n| n.eq_ignore_ascii_case(name.trim()))
        .ok_or_else(|| Error::InvalidArgument(format!("{name} is not in the Petersen family")))?;
    let base_count = enumerate_pairs(&g, None, false).len();
    let mut jobs = Vec::new();
    for v in g.vertices().filter(|&v| g.degree(v) >= 4) {
        for s in vertex_splittings(&g, v)? {
            if s.kind == SplitKind::NonTrivial {
                jobs.push((v, s));
            }
        }
    }
    let rows: Vec<SplittingRow> = jobs
        .into_par_iter()
        .map(|(v, s)| {
            let count = enumerate_pairs(&s.graph, None, false).len();
            SplittingRow {
                vertex: v,
                keep: s.keep.into_iter().collect(),
                moved: s.moved.into_iter().collect(),
                count,
                increases: count > base_count,
            }
        })
        .collect();
    let passed = rows.iter().all(|r| r.increases);
    Ok(SplittingReport {
        graph: canon.to_string(),
        base_count,
        rows,
        passed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonteCarloReport {
    pub lambda: String,
    pub trials: usize,
    pub seed: u64,
    pub parity_even: bool,
    /// ς value of each trial, in trial order.
    pub sigmas: Vec<u8>,
    pub histogram: BTreeMap<u8, usize>,
    pub all_one: bool,
}

/// Seed of trial `i` derived from the master seed.
pub fn trial_seed(master: u64, i: usize) -> u64 {
    mix_seed(master, i as u64)
}

/// ς = Σ lk mod 2 over random straight-line embeddings.
///
/// The report records whether the parity table is even; the sampling runs
/// either way so that parity failures can be observed as non-constant ς.
pub fn monte_carlo_sigma(g: &Graph, lam: &LambdaSet, trials: usize, seed: u64) -> Result<MonteCarloReport> {
    let parity_even = parity_table(g, lam)?.all_even();
    let sigmas: Vec<u8> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let e = random_linear_embedding(g, trial_seed(seed, i))?;
            let (_, d) = first_generic_projection(&e)?;
            let mut sum = 0i64;
            for p in lam.pairs() {
                sum += d.linking_number(p)?;
            }
            Ok(sum.rem_euclid(2) as u8)
        })
        .collect::<Result<_>>()?;
    let mut histogram = BTreeMap::new();
    for &s in &sigmas {
        *histogram.entry(s).or_insert(0) += 1;
    }
    Ok(MonteCarloReport {
        lambda: lam.name().to_string(),
        trials,
        seed,
        parity_even,
        all_one: sigmas.iter().all(|&s| s == 1),
        sigmas,
        histogram,
    })
}

/// Serialized form of a complete certificate set for one graph.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateBundle {
    pub graph: Graph,
    pub lambda: LambdaSet,
    #[serde(rename = "witnessDiagram", default, skip_serializing_if = "Option::is_none")]
    pub witness_diagram: Option<Diagram>,
    #[serde(rename = "parityDigest")]
    pub parity_digest: Vec<(EdgePair, usize)>,
    #[serde(default)]
    pub battery: Vec<WitnessSpec>,
    #[serde(rename = "minorMap", default, skip_serializing_if = "Option::is_none")]
    pub minor_map: Option<MinorMap>,
}

impl CertificateBundle {
    pub fn new(lam: &LambdaSet, witness: Option<&Diagram>, battery: Option<&MinimalityBattery>) -> Result<Self> {
        let table = parity_table(lam.host(), lam)?;
        Ok(CertificateBundle {
            graph: lam.host().clone(),
            lambda: lam.clone(),
            witness_diagram: witness.cloned(),
            parity_digest: table.digest(),
            battery: battery.map(|b| b.specs().to_vec()).unwrap_or_default(),
            minor_map: None,
        })
    }

    /// Checks the internal consistency of the bundle (graph, digest).
    pub fn check(&self) -> Result<()> {
        check_host(&self.graph, &self.lambda)?;
        let table = parity_table(&self.graph, &self.lambda)?;
        if table.digest() != self.parity_digest {
            return Err(Error::Verification("parity digest does not match the set".into()));
        }
        Ok(())
    }

    pub fn witness(&self) -> Result<&Diagram> {
        self.witness_diagram
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("bundle carries no witness diagram".into()))
    }

    pub fn minimality_battery(&self) -> Result<MinimalityBattery> {
        MinimalityBattery::new(self.lambda.clone(), self.witness()?.clone(), self.battery.clone())
    }
}

/// The listed set of a catalog graph together with its graph.
pub fn catalog_case(name: &str) -> Result<(Graph, LambdaSet)> {
    let g = catalog_graph(name)?;
    let lam = default_lambda(name)?;
    Ok((g, lam))
}
