use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::tree::{Tree, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TreeShape {
    /// Uniform over labelled trees, via a random Prüfer sequence.
    Uniform,
    /// A spine of about half the vertices, the rest hung on random spine vertices.
    Caterpillar,
    Star,
    Path,
    /// Legs of random lengths around vertex 0.
    Spider,
}

impl std::str::FromStr for TreeShape {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "uniform" | "prufer" => Ok(TreeShape::Uniform),
            "caterpillar" => Ok(TreeShape::Caterpillar),
            "star" => Ok(TreeShape::Star),
            "path" => Ok(TreeShape::Path),
            "spider" => Ok(TreeShape::Spider),
            _ => Err(format!(
                "unknown shape {s:?} (expected uniform, caterpillar, star, path or spider)"
            )),
        }
    }
}

/// A random tree on `n` vertices. The same `(n, seed, shape)` always gives the
/// same tree.
pub fn gen_random_tree(n: usize, seed: u64, shape: TreeShape) -> Result<Tree> {
    if n == 0 {
        return Err(invalid("a tree needs at least one vertex"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = match shape {
        TreeShape::Path => (1..n).map(|v| (v - 1, v)).collect(),
        TreeShape::Star => (1..n).map(|v| (0, v)).collect(),
        TreeShape::Uniform => prufer(n, &mut rng),
        TreeShape::Caterpillar => {
            let spine = n.div_ceil(2);
            let mut edges: Vec<_> = (1..spine).map(|v| (v - 1, v)).collect();
            edges.extend((spine..n).map(|v| (rng.gen_range(0..spine), v)));
            edges
        }
        TreeShape::Spider => {
            let mut edges = Vec::with_capacity(n - 1);
            if n > 1 {
                let legs = rng.gen_range(1..n);
                // each vertex after the first `legs` extends a random leg
                let mut tips: Vec<Vertex> = (1..=legs).collect();
                edges.extend(tips.iter().map(|&v| (0, v)));
                for v in legs + 1..n {
                    let leg = rng.gen_range(0..legs);
                    edges.push((tips[leg], v));
                    tips[leg] = v;
                }
            }
            edges
        }
    };
    Ok(Tree::new(n, &edges)?)
}

fn prufer(n: usize, rng: &mut impl Rng) -> Vec<(Vertex, Vertex)> {
    if n <= 2 {
        return (1..n).map(|v| (v - 1, v)).collect();
    }
    let seq: Vec<Vertex> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &v in &seq {
        degree[v] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<Vertex>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in &seq {
        let Reverse(leaf) = leaves.pop().expect("a Prüfer sequence always leaves a leaf");
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.push(Reverse(v));
        }
    }
    let Reverse(a) = leaves.pop().unwrap();
    let Reverse(b) = leaves.pop().unwrap();
    edges.push((a, b));
    edges
}

/// A shuffled yes-instance of 3-PARTITION with `m` triples summing to `b`.
/// Needs `b >= 9` so that every item can lie strictly between `b/4` and `b/2`.
pub fn random_three_partition(m: usize, b: u64, seed: u64) -> Result<Vec<u64>> {
    if m == 0 || b < 9 {
        return Err(invalid("need m >= 1 and B >= 9"));
    }
    let lo = b / 4 + 1;
    let hi = (b - 1) / 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut items = Vec::with_capacity(3 * m);
    for _ in 0..m {
        loop {
            let x = rng.gen_range(lo..=hi);
            let y = rng.gen_range(lo..=hi);
            if let Some(z) = b.checked_sub(x + y) {
                if (lo..=hi).contains(&z) {
                    items.extend([x, y, z]);
                    break;
                }
            }
        }
    }
    for i in (1..items.len()).rev() {
        items.swap(i, rng.gen_range(0..=i));
    }
    Ok(items)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{check_three_partition, three_partition_solve};

    const SHAPES: [TreeShape; 5] = [
        TreeShape::Uniform,
        TreeShape::Caterpillar,
        TreeShape::Star,
        TreeShape::Path,
        TreeShape::Spider,
    ];

    #[test]
    fn deterministic_and_sized() {
        for shape in SHAPES {
            for n in [1, 2, 3, 10, 57] {
                let a = gen_random_tree(n, 7, shape).unwrap();
                assert_eq!(a.len(), n);
                assert_eq!(a, gen_random_tree(n, 7, shape).unwrap());
            }
        }
        assert!(gen_random_tree(0, 1, TreeShape::Path).is_err());
    }

    #[test]
    fn seeds_differ() {
        let a = gen_random_tree(40, 1, TreeShape::Uniform).unwrap();
        let b = gen_random_tree(40, 2, TreeShape::Uniform).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn caterpillar_spine() {
        let t = gen_random_tree(20, 3, TreeShape::Caterpillar).unwrap();
        for v in 10..20 {
            assert_eq!(t.degree(v), 1);
        }
    }

    #[test]
    fn generated_partitions_are_solvable() {
        for seed in 0..20 {
            let a = random_three_partition(3, 40, seed).unwrap();
            assert_eq!(check_three_partition(&a, 40).unwrap(), 3);
            assert!(three_partition_solve(&a, 40).unwrap().is_some());
        }
    }

    #[test]
    fn shape_names() {
        assert_eq!("prufer".parse::<TreeShape>(), Ok(TreeShape::Uniform));
        assert!("blob".parse::<TreeShape>().is_err());
    }
}
