use necklical::builders::*;
use necklical::cube::{CubeCalculus, CubeCell};
use necklical::path::PathModel;
use necklical::random::{rng, WordSampler, DEFAULT_SEED};
use necklical::relations::{check_cubical, check_degeneracies};
use necklical::word::LoopModel;
use necklical::SimplicialPresentation;

fn fixtures() -> Vec<SimplicialPresentation> {
    vec![
        sphere_quotient(2).unwrap(),
        sphere_quotient(3).unwrap(),
        boundary_simplex(2).unwrap(),
        boundary_simplex(3).unwrap(),
        wedge_of_circles(2).unwrap(),
        wedge_aab().unwrap(),
    ]
}

#[test]
fn cube_relations_on_five_cubes() {
    for (n, aug) in [(6, false), (5, true)] {
        for c in CubeCell::enumerate(n, aug) {
            let failures = check_cubical(&CubeCalculus, &c).unwrap();
            assert!(failures.is_empty(), "{}", failures[0]);
            let failures = check_degeneracies(&CubeCalculus, &c).unwrap();
            assert!(failures.is_empty(), "{}", failures[0]);
        }
    }
}

#[test]
fn word_relations_on_random_loops() {
    let mut r = rng(DEFAULT_SEED);
    for x in fixtures() {
        let m = LoopModel::new(&x).unwrap();
        let mut sampler = WordSampler::new(&m, 3);
        for k in 0..60 {
            sampler.degenerate_probability = if k % 2 == 0 { 0.0 } else { 0.3 };
            let w = sampler.sample(&mut r, 4);
            let raw = m.raw(&w);
            let failures = check_cubical(&m, &raw).unwrap();
            assert!(failures.is_empty(), "{}: {}", x.name(), failures[0]);
            let failures = check_degeneracies(&m, &raw).unwrap();
            assert!(failures.is_empty(), "{}: {}", x.name(), failures[0]);
        }
    }
}

#[test]
fn path_relations_on_random_cells() {
    let mut r = rng(DEFAULT_SEED + 1);
    for x in fixtures() {
        let m = LoopModel::new(&x).unwrap();
        let p = PathModel::new(&m);
        let sampler = WordSampler::new(&m, 3);
        for _ in 0..60 {
            let c = sampler.sample_path(&mut r, 3, 3);
            let raw = c.raw();
            let failures = check_cubical(&p, &raw).unwrap();
            assert!(failures.is_empty(), "{}: {}", x.name(), failures[0]);
            let failures = check_degeneracies(&p, &raw).unwrap();
            assert!(failures.is_empty(), "{}: {}", x.name(), failures[0]);
        }
    }
}
