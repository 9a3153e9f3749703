use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use linkset_core::assets::{self, read_input};
use linkset_core::catalog::{catalog_graph, catalog_lambda, default_lambda};
use linkset_core::certificates::CertificateBundle;
use linkset_core::{complete_graph, Diagram, Error, Graph, LambdaSet, MinorMap};

use crate::{Failure, Run};

/// A parsed input together with the text it came from (used for digests).
pub struct Loaded<T> {
    pub value: T,
    pub text: String,
}

impl<T: Serialize> Loaded<T> {
    fn built(value: T) -> Self {
        let text = serde_json::to_string(&value).expect("catalog objects serialize");
        Loaded { value, text }
    }
}

impl Loaded<Diagram> {
    pub fn shipped_witness(graph: &str) -> Run<Self> {
        let name = linkset_core::catalog::canonical_graph_name(graph)
            .ok_or_else(|| Failure::Input(format!("no shipped witness for {graph}")))?;
        let text = assets::asset_text(&format!("h_{name}.json"))?;
        parse(text)
    }
}

impl Loaded<CertificateBundle> {
    pub fn shipped_bundle(graph: &str) -> Run<Self> {
        let name = linkset_core::catalog::canonical_graph_name(graph)
            .ok_or_else(|| Failure::Input(format!("no shipped battery for {graph}")))?;
        let text = assets::asset_text(&format!("{name}.battery.json"))?;
        parse(text)
    }
}

fn parse<T: DeserializeOwned>(text: String) -> Run<Loaded<T>> {
    let value = serde_json::from_str(&text).map_err(|e| Failure::Input(e.to_string()))?;
    Ok(Loaded { value, text })
}

fn parse_file<T: DeserializeOwned>(path: &Path) -> Run<Loaded<T>> {
    let text = read_input(path)?;
    let value = serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(Loaded { value, text })
}

pub struct Inputs;

impl Inputs {
    /// A catalog name, `K<n>`, or a graph JSON file.
    pub fn graph(name: &str) -> Run<Loaded<Graph>> {
        if let Ok(g) = catalog_graph(name) {
            return Ok(Loaded::built(g));
        }
        if let Some(n) = name.trim().strip_prefix(['K', 'k']).and_then(|s| s.parse::<usize>().ok()) {
            return Ok(Loaded::built(complete_graph(n)?));
        }
        let path = Path::new(name);
        if path.is_file() {
            return parse_file(path);
        }
        Err(Error::UnknownName(name.to_string()).into())
    }

    /// A catalog Λ name or a Λ JSON file; the graph's default set when absent.
    pub fn lambda(name: Option<&str>, graph_name: &str, g: &Graph) -> Run<Loaded<LambdaSet>> {
        let loaded = match name {
            Some(n) => match catalog_lambda(n) {
                Ok(l) => Loaded::built(l),
                Err(_) if Path::new(n).is_file() => parse_file(Path::new(n))?,
                Err(e) => return Err(e.into()),
            },
            None => Loaded::built(default_lambda(graph_name)?),
        };
        if loaded.value.host() != g {
            return Err(Failure::Input(format!(
                "{} is not a set of pairs of {graph_name}",
                loaded.value.name()
            )));
        }
        Ok(loaded)
    }

    pub fn diagram(path: &Path) -> Run<Loaded<Diagram>> {
        parse_file(path)
    }

    pub fn bundle(path: &Path) -> Run<Loaded<CertificateBundle>> {
        parse_file(path)
    }

    pub fn minor_map(path: &Path) -> Run<Loaded<MinorMap>> {
        parse_file(path)
    }
}
