//! The fixed fans used by examples, tests and the CLI corpus.

use crate::polyfan::{Fan, Vector};

/// A named fan of the corpus.
#[derive(Clone, Debug)]
pub struct CorpusFan {
    pub name: &'static str,
    pub fan: Fan,
}

fn fan(rank: usize, rays: &[&[i64]], max_cones: &[&[usize]]) -> Fan {
    let rays: Vec<Vector> = rays.iter().map(|r| r.to_vec()).collect();
    let cones: Vec<Vec<usize>> = max_cones.iter().map(|c| c.to_vec()).collect();
    Fan::from_indexed(rank, rays, &cones).expect("corpus fan is valid")
}

/// The projective plane.
pub fn p2() -> Fan {
    fan(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2], &[0, 2]])
}

/// `P^1 × P^1` with rays `e1, −e1, e2, −e2`.
pub fn p1xp1() -> Fan {
    fan(2, &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]], &[&[0, 2], &[0, 3], &[1, 2], &[1, 3]])
}

/// The weighted projective plane `P(1,1,2)`.
pub fn p112() -> Fan {
    fan(2, &[&[1, 0], &[0, 1], &[-1, -2]], &[&[0, 1], &[1, 2], &[0, 2]])
}

/// The cone over a quadric: one non-simplicial 3-cone.
pub fn quadric_cone() -> Fan {
    fan(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 0, 1], &[0, 1, 1]], &[&[0, 1, 2, 3]])
}

/// Three rays `e1, e2, e1+e2` without any 2-cones.
pub fn rays_only() -> Fan {
    fan(2, &[&[1, 0], &[0, 1], &[1, 1]], &[&[0], &[1], &[2]])
}

/// The affine plane: one orthant cone.
pub fn a2() -> Fan {
    fan(2, &[&[1, 0], &[0, 1]], &[&[0, 1]])
}

/// The fan `{0, cone(e1)}` in rank 2.
pub fn single_ray() -> Fan {
    fan(2, &[&[1, 0]], &[&[0]])
}

/// The empty fan in rank 2.
pub fn empty() -> Fan {
    Fan::empty(2)
}

/// The five fans of the main corpus.
pub fn all() -> Vec<CorpusFan> {
    vec![
        CorpusFan { name: "p2", fan: p2() },
        CorpusFan { name: "p1xp1", fan: p1xp1() },
        CorpusFan { name: "p112", fan: p112() },
        CorpusFan { name: "quadric_cone", fan: quadric_cone() },
        CorpusFan { name: "rays_only", fan: rays_only() },
    ]
}

/// The main corpus plus the auxiliary fans.
pub fn extended() -> Vec<CorpusFan> {
    let mut v = all();
    v.push(CorpusFan { name: "a2", fan: a2() });
    v.push(CorpusFan { name: "single_ray", fan: single_ray() });
    v.push(CorpusFan { name: "empty", fan: empty() });
    v
}
