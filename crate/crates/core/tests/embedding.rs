use std::collections::BTreeMap;

use linkset_core::embedding::{first_generic_projection, PROJECTION_DIRECTIONS};
use linkset_core::{
    complete_graph, enumerate_pairs, linking_number_linear, project_to_diagram, random_linear_embedding, CyclePair,
    Error, Graph, LinearEmbedding,
};

fn two_triangles() -> Graph {
    Graph::from_pairs(1..=6, &[(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]).unwrap()
}

fn embed(coords: [[i64; 3]; 6]) -> LinearEmbedding {
    let c: BTreeMap<u32, [i64; 3]> = coords.into_iter().enumerate().map(|(i, p)| (i as u32 + 1, p)).collect();
    LinearEmbedding::new(two_triangles(), c).unwrap()
}

fn pair() -> CyclePair {
    "[1 2 3]∪[4 5 6]".parse().unwrap()
}

#[test]
fn sampling_is_deterministic() {
    let k6 = complete_graph(6).unwrap();
    let a = random_linear_embedding(&k6, 42).unwrap();
    let b = random_linear_embedding(&k6, 42).unwrap();
    let c = random_linear_embedding(&k6, 43).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, c);
    for seed in 0..50 {
        let e = random_linear_embedding(&k6, seed).unwrap();
        assert!(e.check_general_position().is_ok());
        assert!(LinearEmbedding::new(k6.clone(), e.coordinates().clone()).is_ok());
        assert!(e.coordinates().values().flatten().all(|c| c.abs() <= 1_000_000));
    }
}

#[test]
fn general_position_is_enforced() {
    let c = [[0, 0, 0], [1, 0, 0], [2, 0, 0], [0, 5, 1], [1, 7, 2], [3, 1, 9]];
    let cs: BTreeMap<u32, [i64; 3]> = c.into_iter().enumerate().map(|(i, p)| (i as u32 + 1, p)).collect();
    assert!(matches!(LinearEmbedding::new(two_triangles(), cs), Err(Error::Embedding(_))));
    // Edge 4-5 passes through the middle of edge 1-2.
    let c = [[0, 0, 0], [4, 0, 0], [0, 3, 7], [2, -1, 0], [2, 1, 0], [9, 9, 9]];
    let cs: BTreeMap<u32, [i64; 3]> = c.into_iter().enumerate().map(|(i, p)| (i as u32 + 1, p)).collect();
    assert!(matches!(LinearEmbedding::new(two_triangles(), cs), Err(Error::Embedding(_))));
}

#[test]
fn interlocked_triangles_link() {
    let e = embed([[0, 0, 0], [10, 0, 0], [0, 10, 0], [3, 3, -5], [3, 3, 5], [20, 20, 1]]);
    assert_eq!(linking_number_linear(&e, &pair()).unwrap().abs(), 1);
    let swapped = CyclePair::new(pair().second().clone(), pair().first().clone()).unwrap();
    assert_eq!(linking_number_linear(&e, &swapped).unwrap(), linking_number_linear(&e, &pair()).unwrap());
    let far = embed([[0, 0, 0], [10, 0, 0], [0, 10, 0], [30, 3, -5], [30, 3, 5], [50, 20, 1]]);
    assert_eq!(linking_number_linear(&far, &pair()).unwrap(), 0);
}

#[test]
fn planar_embedding_projects_without_crossings() {
    let g = Graph::from_pairs(1..=4, &[(1, 2), (1, 3), (1, 4), (2, 3), (3, 4), (2, 4)]).unwrap();
    let c: BTreeMap<u32, [i64; 3]> = [(1, [0, 0, 0]), (2, [10, 0, 0]), (3, [0, 10, 0]), (4, [-7, -6, 0])].into();
    let e = LinearEmbedding::new(g, c).unwrap();
    let d = project_to_diagram(&e, [0, 0, 1]).unwrap();
    assert!(d.crossings().is_empty());
}

#[test]
fn direction_parallel_to_an_edge_is_rejected() {
    let e = embed([[0, 0, 0], [10, 0, 0], [0, 10, 1], [3, 3, -5], [3, 3, 5], [20, 20, 1]]);
    assert!(matches!(project_to_diagram(&e, [0, 0, 1]), Err(Error::NonGenericDirection(..))));
    let (dir, _) = first_generic_projection(&e).unwrap();
    assert_ne!(dir, [0, 0, 1]);
    assert!(matches!(project_to_diagram(&e, [0, 0, 0]), Err(Error::NonGenericDirection(..))));
}

#[test]
fn linking_number_is_independent_of_direction() {
    let k6 = complete_graph(6).unwrap();
    let pairs = enumerate_pairs(&k6, None, false);
    for seed in 100..200 {
        let e = random_linear_embedding(&k6, seed).unwrap();
        let views: Vec<_> = PROJECTION_DIRECTIONS
            .iter()
            .filter_map(|&d| project_to_diagram(&e, d).ok())
            .take(3)
            .collect();
        assert!(views.len() >= 2, "seed {seed}");
        let mut odd = 0;
        for p in &pairs {
            let lk = views[0].linking_number(p).unwrap();
            for v in &views[1..] {
                assert_eq!(v.linking_number(p).unwrap(), lk, "seed {seed} {p}");
            }
            odd += lk.rem_euclid(2);
        }
        assert_eq!(odd % 2, 1, "seed {seed}");
    }
}
