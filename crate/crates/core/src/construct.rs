//! Small minimally linked sets of Hamiltonian pairs in complete graphs.

use serde::Serialize;

use crate::assets::certificate_bundle;
use crate::certificates::{
    lift_battery, parity_table, verify_linked, CertificateBundle, LinkednessCertificate, MinimalityBattery,
};
use crate::cycles::LambdaSet;
use crate::error::{Error, Result};
use crate::graph::{complete_graph, Edge, Graph};
use crate::minor::{psi_pair_map, MinorMap};

/// Size bounds for the checks run by [`lambda_for_complete`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConstructOptions {
    /// Largest host on which certificates are lifted and re-verified.
    pub battery_max_n: usize,
    /// Largest host on which the parity table is recomputed.
    pub parity_max_n: usize,
}

impl Default for ConstructOptions {
    fn default() -> Self {
        ConstructOptions {
            battery_max_n: 10,
            parity_max_n: 12,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Construction {
    pub p: usize,
    pub q: usize,
    /// Catalog graph the set is pushed forward from.
    pub source: &'static str,
    pub map: MinorMap,
    pub lambda: LambdaSet,
    pub parity_even: Option<bool>,
    pub certificates: Option<(LinkednessCertificate, MinimalityBattery)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstructionSummary {
    pub lambda: String,
    pub source: &'static str,
    pub n: usize,
    pub pairs: usize,
    pub hamiltonian: bool,
    pub parity_even: Option<bool>,
    pub certified: bool,
}

impl Construction {
    pub fn host(&self) -> &Graph {
        self.map.host()
    }

    pub fn summary(&self) -> ConstructionSummary {
        let g = self.host();
        ConstructionSummary {
            lambda: self.lambda.name().to_string(),
            source: self.source,
            n: g.n(),
            pairs: self.lambda.len(),
            hamiltonian: self.lambda.pairs().iter().all(|p| p.is_hamiltonian(g)),
            parity_even: self.parity_even,
            certified: self.certificates.is_some(),
        }
    }

    pub fn bundle(&self) -> Result<CertificateBundle> {
        let (witness, battery) = match &self.certificates {
            Some((c, b)) => (Some(c.witness()), Some(b)),
            None => (None, None),
        };
        let mut bundle = CertificateBundle::new(&self.lambda, witness, battery)?;
        bundle.minor_map = Some(self.map.clone());
        Ok(bundle)
    }
}

fn plan_for(p: usize, q: usize) -> Result<(&'static str, Vec<(Edge, usize)>, u32)> {
    let e78 = Edge::of(7, 8);
    Ok(match (p, q) {
        (3, 3) => ("K6", vec![], 7),
        (4, 3) => ("P7", vec![], 8),
        (4, 4) => ("Q8", vec![], 9),
        (p, 3) => ("G8", vec![(e78, p - 5)], 9),
        (p, 4) => ("G9", vec![(e78, p - 5)], 10),
        (p, q) => ("G10", vec![(e78, p - 5), (Edge::of(9, 10), q - 5)], 11),
    })
}

fn build(
    p: usize,
    q: usize,
    source: &'static str,
    map: MinorMap,
    name: String,
    opts: &ConstructOptions,
) -> Result<Construction> {
    let bundle = certificate_bundle(source)?;
    let pairs = bundle
        .lambda
        .pairs()
        .iter()
        .map(|pair| psi_pair_map(&map, pair))
        .collect::<Result<Vec<_>>>()?;
    let lambda = LambdaSet::new(name, map.host().clone(), pairs)?;
    if lambda.len() != bundle.lambda.len() {
        return Err(Error::Verification("pushed-forward set lost pairs".into()));
    }
    let n = map.host().n();
    let parity_even = if n <= opts.parity_max_n {
        Some(parity_table(map.host(), &lambda)?.all_even())
    } else {
        None
    };
    let certificates = if n <= opts.battery_max_n {
        let witness = bundle.witness()?;
        let cert = verify_linked(&bundle.graph, &bundle.lambda, witness)?;
        let battery = bundle.minimality_battery()?;
        let (c, b) = lift_battery(&map, &cert, &battery)?;
        let b = MinimalityBattery::new(lambda.clone(), b.base().clone(), b.specs().to_vec())?;
        Some((c, b))
    } else {
        None
    };
    Ok(Construction {
        p,
        q,
        source,
        map,
        lambda,
        parity_even,
        certificates,
    })
}

/// Minimally linked set of Hamiltonian `(p, q)` pairs of `K_{p+q}`.
///
/// The set is pushed forward from a catalog graph whose connecting edges are
/// subdivided to reach cycle lengths `p` and `q`. The order of `p` and `q`
/// does not matter. For `(5, 5)` the list also holds the six-element set
/// coming from the Petersen graph.
pub fn lambda_for_complete(p: usize, q: usize, opts: &ConstructOptions) -> Result<Vec<Construction>> {
    let (p, q) = (p.max(q), p.min(q));
    if q < 3 {
        return Err(Error::UnsupportedType(p, q));
    }
    let n = p + q;
    let (source, plan, start) = plan_for(p, q)?;
    let g = crate::catalog::catalog_graph(source)?;
    let plan: Vec<(Edge, usize)> = plan.into_iter().filter(|(_, k)| *k > 0).collect();
    let host = complete_graph(n)?;
    let map = if plan.is_empty() {
        MinorMap::identity(&g)
    } else {
        MinorMap::subdivisions(&g, &plan, start)?
    };
    let map = map.into_host(host.clone())?;
    let mut out = vec![build(p, q, source, map, format!("Λ(K{n})"), opts)?];
    if (p, q) == (5, 5) {
        let petersen = crate::catalog::catalog_graph("P10")?;
        let map = MinorMap::identity(&petersen).into_host(host)?;
        out.push(build(p, q, "P10", map, "Λ′(K10)".to_string(), opts)?);
    }
    Ok(out)
}
