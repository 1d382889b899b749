//! Seeded, deterministic fixture families: the same seed always produces
//! the same objects, so test suites and the command-line corpus writer can
//! share them.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use num_rational::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arrangement::{Arrangement, Hyperplane};
use crate::assigning::AssigningMatroid;
use crate::graph::{GainGraph, MultiGraph};
use crate::matroid::Matroid;
use crate::semimatroid::Semimatroid;

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn random_matroid(r: &mut ChaCha8Rng, max_size: u32) -> Matroid {
    match r.gen_range(0u8..3) {
        0 => {
            let n = r.gen_range(1..=max_size);
            let rk = r.gen_range(0..=n.min(4)) as u8;
            Matroid::uniform(rk, n).expect("uniform fixture")
        }
        1 => {
            let n = r.gen_range(1..=max_size) as usize;
            let dim = r.gen_range(1..=3usize);
            let cols: Vec<Vec<BigRational>> = (0..n)
                .map(|_| {
                    (0..dim)
                        .map(|_| BigRational::from_integer(r.gen_range(-2i64..=2).into()))
                        .collect()
                })
                .collect();
            Matroid::from_columns_q(&cols).expect("column fixture")
        }
        _ => {
            let p = [2u64, 3, 5][r.gen_range(0..3usize)];
            let n = r.gen_range(1..=max_size) as usize;
            let dim = r.gen_range(1..=3usize);
            let cols: Vec<Vec<u64>> = (0..n)
                .map(|_| (0..dim).map(|_| r.gen_range(0..p)).collect())
                .collect();
            Matroid::from_columns_fp(&cols, p).expect("column fixture")
        }
    }
}

fn random_arrangement(
    r: &mut ChaCha8Rng,
    dims: RangeInclusive<usize>,
    sizes: RangeInclusive<usize>,
    central: bool,
) -> Arrangement {
    let dim = r.gen_range(dims);
    let size = r.gen_range(sizes);
    let mut hps = Vec::new();
    for _ in 0..size {
        let normal: Vec<i64> = (0..dim).map(|_| r.gen_range(-3i64..=3)).collect();
        let offset = if central { 0 } else { r.gen_range(-3i64..=3) };
        hps.push(Hyperplane::from_ints(&normal, offset));
    }
    Arrangement::rational(dim, hps).expect("generated arrangement")
}

fn random_gain_graph(r: &mut ChaCha8Rng) -> GainGraph {
    let n = r.gen_range(1..=5usize);
    let size = r.gen_range(0..=7usize);
    let edges: Vec<(usize, usize)> = (0..size)
        .map(|_| (r.gen_range(0..n), r.gen_range(0..n)))
        .collect();
    let orientation = edges
        .iter()
        .map(|&(u, v)| if r.gen::<bool>() { (v, u) } else { (u, v) })
        .collect();
    let gains: Vec<i64> = (0..size).map(|_| r.gen_range(-2i64..=2)).collect();
    let graph = MultiGraph::new(n, edges).expect("generated graph");
    GainGraph::from_ints(graph, orientation, &gains).expect("generated gains")
}

/// All coordinate-difference hyperplanes on `n` coordinates.
fn braid(n: usize) -> Arrangement {
    let mut hps = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut normal = vec![0i64; n];
            normal[i] = -1;
            normal[j] = 1;
            hps.push(Hyperplane::from_ints(&normal, 0));
        }
    }
    Arrangement::rational(n, hps).expect("braid fixture")
}

fn line_points() -> Arrangement {
    Arrangement::rational(
        1,
        vec![
            Hyperplane::from_ints(&[1], 0),
            Hyperplane::from_ints(&[1], 1),
        ],
    )
    .expect("line fixture")
}

fn parallel_pair() -> Arrangement {
    Arrangement::rational(
        1,
        vec![
            Hyperplane::from_ints(&[1], 0),
            Hyperplane::from_ints(&[1], 0),
        ],
    )
    .expect("pair fixture")
}

/// Four lines through the origin of the plane in general position.
fn four_generic_lines() -> Arrangement {
    Arrangement::rational(
        2,
        vec![
            Hyperplane::from_ints(&[1, 0], 0),
            Hyperplane::from_ints(&[0, 1], 0),
            Hyperplane::from_ints(&[1, 1], 0),
            Hyperplane::from_ints(&[1, -1], 0),
        ],
    )
    .expect("line bundle fixture")
}

/// At least a hundred rational arrangements in dimension at most four with
/// at most six hyperplanes, leading with fixed edge cases.
pub fn arrangements(seed: u64) -> Vec<Arrangement> {
    let mut r = rng(seed, 1);
    let mut out = vec![
        braid(3),
        braid(4),
        line_points(),
        parallel_pair(),
        four_generic_lines(),
        Arrangement::rational(2, vec![Hyperplane::from_ints(&[0, 0], 0)]).expect("fixture"),
        Arrangement::rational(2, vec![Hyperplane::from_ints(&[0, 0], 1)]).expect("fixture"),
    ];
    while out.len() < 104 {
        out.push(random_arrangement(&mut r, 1..=4, 1..=6, false));
    }
    out
}

/// At least twenty arrangements with every offset zero, sized so that their
/// discriminantal arrangements stay within the enumeration cap.
pub fn central_arrangements(seed: u64) -> Vec<Arrangement> {
    let mut r = rng(seed, 2);
    let mut out = vec![braid(3), parallel_pair(), four_generic_lines()];
    while out.len() < 24 {
        let a = random_arrangement(&mut r, 2..=4, 3..=5, true);
        if a.discriminantal().is_ok() {
            out.push(a);
        }
    }
    out
}

/// At least fifty matroids with a distinguished non-loop element.
pub fn pointed(seed: u64) -> Vec<(Matroid, u32)> {
    let mut r = rng(seed, 4);
    let mut out = Vec::new();
    while out.len() < 52 {
        let m = random_matroid(&mut r, 6);
        let nonloops: Vec<u32> = (0..m.width()).filter(|&e| !m.is_loop(e)).collect();
        if nonloops.is_empty() {
            continue;
        }
        let p = nonloops[r.gen_range(0..nonloops.len())];
        out.push((m, p));
    }
    out
}

/// At least two hundred semimatroids on at most seven elements, drawn from
/// matroids, pointed matroids, arrangements, and translations of central
/// arrangements.
pub fn semimatroids(seed: u64) -> Vec<Semimatroid> {
    let mut r = rng(seed, 0);
    let mut out = Vec::new();
    for _ in 0..40 {
        out.push(Semimatroid::from_matroid(&random_matroid(&mut r, 7)));
    }
    for (m, p) in pointed(seed) {
        out.push(Semimatroid::from_pointed_matroid(&m, p).expect("pointed fixture"));
    }
    for _ in 0..60 {
        let a = random_arrangement(&mut r, 1..=3, 1..=6, false);
        out.push(a.semimatroid().expect("arrangement fixture"));
    }
    let central = central_arrangements(seed);
    for i in 0..60 {
        let a = &central[i % central.len()];
        let offsets: Vec<BigRational> = (0..a.size())
            .map(|_| BigRational::from_integer(r.gen_range(-2i64..=2).into()))
            .collect();
        out.push(
            a.translate(&offsets)
                .expect("translation fixture")
                .semimatroid()
                .expect("translation fixture"),
        );
    }
    // labeled four-point-line families: all circuits zero, and one nonzero
    let four = Matroid::uniform(2, 4).expect("four-point line");
    for keep in [None, Some(0usize)] {
        let labels: BTreeMap<u32, u8> = four
            .circuits()
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, u8::from(keep.map_or(false, |k| k != i))))
            .collect();
        let a = AssigningMatroid::new(four.clone(), labels).expect("labels");
        out.push(a.as_semimatroid().expect("labeled family"));
    }
    out
}

/// Gain graphs on at most five vertices and seven edges, leading with fixed
/// shapes: triangles, a theta, loops, and a forest.
pub fn gain_graphs(seed: u64) -> Vec<GainGraph> {
    let mut r = rng(seed, 5);
    let triangle = MultiGraph::new(3, vec![(0, 1), (1, 2), (0, 2)]).expect("triangle");
    let tri_orient = vec![(0, 1), (1, 2), (0, 2)];
    let theta = MultiGraph::new(2, vec![(0, 1), (0, 1), (0, 1)]).expect("theta");
    let one_loop = MultiGraph::new(2, vec![(0, 0), (0, 1)]).expect("loop");
    let path = MultiGraph::new(3, vec![(0, 1), (1, 2)]).expect("path");
    let mut out = vec![
        GainGraph::from_ints(triangle.clone(), tri_orient.clone(), &[0, 0, 0]).expect("gains"),
        GainGraph::from_ints(triangle.clone(), tri_orient.clone(), &[1, 0, 0]).expect("gains"),
        GainGraph::from_ints(triangle, tri_orient, &[2, 0, 0]).expect("gains"),
        GainGraph::from_ints(theta, vec![(0, 1), (0, 1), (0, 1)], &[1, 1, 0]).expect("gains"),
        GainGraph::from_ints(one_loop.clone(), vec![(0, 0), (0, 1)], &[0, 1]).expect("gains"),
        GainGraph::from_ints(one_loop, vec![(0, 0), (0, 1)], &[1, 1]).expect("gains"),
        GainGraph::from_ints(path, vec![(0, 1), (1, 2)], &[1, -1]).expect("gains"),
    ];
    while out.len() < 32 {
        out.push(random_gain_graph(&mut r));
    }
    out
}

/// A mixed fixture for file generation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fixture {
    Arrangement(Arrangement),
    GainGraph(GainGraph),
    Assigning(AssigningMatroid),
}

/// `count` mixed fixtures cycling through arrangements, gain graphs, and
/// labeled matroids.
pub fn fixtures(seed: u64, count: usize) -> Vec<Fixture> {
    let mut r = rng(seed, 6);
    (0..count)
        .map(|i| match i % 3 {
            0 => Fixture::Arrangement(random_arrangement(&mut r, 1..=4, 1..=6, false)),
            1 => Fixture::GainGraph(random_gain_graph(&mut r)),
            _ => {
                let m = random_matroid(&mut r, 6);
                let labels: BTreeMap<u32, u8> = m
                    .circuits()
                    .iter()
                    .map(|&c| (c, r.gen_range(0..=1u8)))
                    .collect();
                Fixture::Assigning(AssigningMatroid::new(m, labels).expect("labels"))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn generation_is_deterministic() {
        assert_eq!(semimatroids(7), semimatroids(7));
        assert_eq!(arrangements(7), arrangements(7));
        assert_eq!(central_arrangements(7), central_arrangements(7));
        assert_eq!(pointed(7), pointed(7));
        assert_eq!(gain_graphs(7), gain_graphs(7));
        assert_eq!(fixtures(7, 30), fixtures(7, 30));
        assert_ne!(arrangements(7), arrangements(8));
    }

    #[test]
    fn families_meet_their_size_contracts() {
        let cs = semimatroids(0);
        assert!(cs.len() >= 200);
        assert!(cs.iter().all(|c| c.size() <= 7));

        let ars = arrangements(0);
        assert!(ars.len() >= 100);
        assert!(ars.iter().all(|a| a.dim() <= 4 && a.size() <= 6));

        let centrals = central_arrangements(0);
        assert!(centrals.len() >= 20);
        assert!(centrals
            .iter()
            .all(|a| a.offsets().iter().all(|o| o.is_zero())));

        assert!(pointed(0).len() >= 50);

        let gs = gain_graphs(0);
        assert!(gs.len() >= 20);
        assert!(gs
            .iter()
            .all(|g| g.graph().vertices() <= 5 && g.graph().size() <= 7));
    }
}
