//! Linked and minimally linked sets of disjoint cycle pairs in spatial graphs.

pub mod assets;
pub mod catalog;
pub mod certificates;
pub mod construct;
pub mod cycles;
pub mod diagram;
pub mod embedding;
pub mod error;
pub mod extend;
pub mod geometry;
pub mod graph;
pub mod linking;
pub mod minor;
pub mod perm;
pub mod synth;
pub mod witness;

pub use cycles::{enumerate_cycles, enumerate_pairs, Cycle, CyclePair, LambdaSet};
pub use diagram::{Crossing, CrossingKey, Diagram, Point, Side, StrandPos};
pub use error::{Error, Result};
pub use graph::{complete_graph, connectivity_report, Edge, Graph, Vertex};
pub use linking::{CrossingTable, SplitCertificate};
pub use minor::{
    contract_edge, delta_y, psi_pair_map, subdivide_edge, vertex_splittings, y_delta, MinorMap,
    SplitKind, Splitting,
};
pub use perm::{apply_permutation, automorphism_group, generate_group, is_isomorphic, VertexPermutation};
pub use certificates::{
    build_battery, check_linked, extend_permutation, lift_battery, monte_carlo_sigma, parity_table,
    splitting_count_check, verify_linked, verify_minimal, CertificateBundle, LinkednessCertificate,
    MinimalReport, MinimalityBattery, MonteCarloReport, ParityTable, SplittingReport, WitnessProfile,
    WitnessSpec,
};
pub use construct::{lambda_for_complete, ConstructOptions, Construction};
pub use embedding::{
    first_generic_projection, linking_number_linear, project_to_diagram, random_linear_embedding,
    LinearEmbedding,
};
pub use extend::extend_diagram;
