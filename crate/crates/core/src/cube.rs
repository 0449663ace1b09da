//! Isometric embeddings of cube vertex sets and trees into the free group
//! on two generators with its biinvariant metric.
//!
//! Dimension i contributes the conjugator gᵢ = b^{4kᵢ} a b^{-4kᵢ}, where kᵢ
//! exceeds every reduced image length of the previous stage; a cube vertex
//! maps to the product of the conjugators of its set coordinates, highest
//! dimension leftmost. A tree embeds by assigning each edge a fresh cube
//! coordinate along a BFS from the root. Verification recomputes every
//! pairwise distance exactly through the norm engine.

use crate::freenorm::biinvariant_distance;
use crate::words::{Alphabet, Letter, Sign, Word};
use std::collections::{BTreeSet, HashMap, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CubeError {
    #[error("dimension {dim} exceeds the supported maximum {max}")]
    DimTooLarge { dim: usize, max: usize },
    #[error("coordinate {coord} out of range for a dimension-{dim} embedding")]
    CoordOutOfRange { coord: usize, dim: usize },
    #[error("input is not a tree: {0}")]
    NotATree(String),
}

/// Word lengths roughly octuple per dimension; beyond 4 exact verification
/// is out of reach.
pub const MAX_CUBE_DIM: usize = 4;

/// A vertex of the unit cube: the set of coordinates equal to 1.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CubeVertex {
    coords: BTreeSet<usize>,
}

impl CubeVertex {
    pub fn empty() -> CubeVertex {
        CubeVertex::default()
    }

    pub fn from_coords<I: IntoIterator<Item = usize>>(coords: I) -> CubeVertex {
        CubeVertex {
            coords: coords.into_iter().collect(),
        }
    }

    pub fn coords(&self) -> impl Iterator<Item = usize> + '_ {
        self.coords.iter().copied()
    }

    pub fn contains(&self, coord: usize) -> bool {
        self.coords.contains(&coord)
    }

    /// l¹ distance: the size of the symmetric difference.
    pub fn l1_distance(&self, other: &CubeVertex) -> usize {
        self.coords.symmetric_difference(&other.coords).count()
    }
}

impl std::fmt::Display for CubeVertex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// One pairwise distance that came out wrong.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub lhs: String,
    pub rhs: String,
    pub expected: usize,
    pub actual: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IsometryReport {
    pub pairs_checked: usize,
    pub violations: Vec<Violation>,
}

impl IsometryReport {
    pub fn is_exact(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The recursive embedding of `{0,1}^dim` into the free group on `a`, `b`.
#[derive(Debug, Clone)]
pub struct CubeEmbedding {
    alphabet: Alphabet,
    conjugators: Vec<Word>,
    k_values: Vec<usize>,
}

fn conjugator(alphabet: &Alphabet, k: usize) -> Word {
    let b = Letter::new(1, Sign::Pos);
    let b_inv = Letter::new(1, Sign::Neg);
    let a = Letter::new(0, Sign::Pos);
    let mut letters = Vec::with_capacity(8 * k + 1);
    letters.extend(std::iter::repeat(b).take(4 * k));
    letters.push(a);
    letters.extend(std::iter::repeat(b_inv).take(4 * k));
    Word::from_letters(alphabet, letters)
}

impl CubeEmbedding {
    /// Build stages 1..=dim, choosing each kᵢ as one plus the largest
    /// reduced image length of the previous stage. The empty vertex maps
    /// to the identity.
    pub fn build(dim: usize) -> Result<CubeEmbedding, CubeError> {
        if dim > MAX_CUBE_DIM {
            return Err(CubeError::DimTooLarge {
                dim,
                max: MAX_CUBE_DIM,
            });
        }
        let alphabet = Alphabet::new("ab").expect("fixed rank-2 alphabet");
        let mut embedding = CubeEmbedding {
            alphabet,
            conjugators: Vec::with_capacity(dim),
            k_values: Vec::with_capacity(dim),
        };
        for stage in 0..dim {
            let max_len = embedding
                .vertices()
                .map(|v| embedding.embed(&v).expect("coords in range").free_reduce().len())
                .max()
                .unwrap_or(0);
            let k = max_len + 1;
            embedding.k_values.push(k);
            let g = conjugator(&embedding.alphabet, k);
            debug_assert_eq!(g.len(), 8 * k + 1);
            debug_assert!(stage + 1 <= dim);
            embedding.conjugators.push(g);
        }
        Ok(embedding)
    }

    pub fn dim(&self) -> usize {
        self.conjugators.len()
    }

    /// The conjugator introduced for coordinate `i` (0-based).
    pub fn conjugator(&self, i: usize) -> &Word {
        &self.conjugators[i]
    }

    pub fn k_values(&self) -> &[usize] {
        &self.k_values
    }

    /// All 2^dim cube vertices.
    pub fn vertices(&self) -> impl Iterator<Item = CubeVertex> + '_ {
        let dim = self.dim();
        (0u32..1 << dim).map(move |mask| {
            CubeVertex::from_coords((0..dim).filter(move |&c| mask & (1 << c) != 0))
        })
    }

    /// Image of a vertex: the product of the conjugators of its set
    /// coordinates, highest dimension leftmost (unreduced).
    pub fn embed(&self, v: &CubeVertex) -> Result<Word, CubeError> {
        let mut letters = Vec::new();
        for coord in v.coords.iter().rev() {
            let g = self
                .conjugators
                .get(*coord)
                .ok_or(CubeError::CoordOutOfRange {
                    coord: *coord,
                    dim: self.dim(),
                })?;
            letters.extend_from_slice(g.letters());
        }
        Ok(Word::from_letters(&self.alphabet, letters))
    }

    /// Check `d(ψ(v), ψ(w)) = l¹(v, w)` for every vertex pair. Dimension 4
    /// requires `allow_slow`.
    pub fn verify_isometry(&self, jobs: usize, allow_slow: bool) -> Result<IsometryReport, CubeError> {
        if self.dim() > 3 && !allow_slow {
            return Err(CubeError::DimTooLarge {
                dim: self.dim(),
                max: 3,
            });
        }
        let vertices: Vec<CubeVertex> = self.vertices().collect();
        let images: Vec<Word> = vertices
            .iter()
            .map(|v| self.embed(v).expect("own vertices are in range"))
            .collect();
        let mut pairs = Vec::new();
        for i in 0..vertices.len() {
            for j in (i + 1)..vertices.len() {
                pairs.push((i, j));
            }
        }
        let check = |&(i, j): &(usize, usize)| -> Option<Violation> {
            let expected = vertices[i].l1_distance(&vertices[j]);
            let actual = biinvariant_distance(&images[i], &images[j]).expect("same alphabet");
            (actual != expected).then(|| Violation {
                lhs: vertices[i].to_string(),
                rhs: vertices[j].to_string(),
                expected,
                actual,
            })
        };
        Ok(run_pairs(&pairs, jobs, check))
    }
}

/// Run the pairwise check, fanning out over `jobs` threads when asked.
fn run_pairs<F>(pairs: &[(usize, usize)], jobs: usize, check: F) -> IsometryReport
where
    F: Fn(&(usize, usize)) -> Option<Violation> + Sync,
{
    let jobs = jobs.max(1).min(pairs.len().max(1));
    let mut violations: Vec<Violation> = if jobs == 1 {
        pairs.iter().filter_map(&check).collect()
    } else {
        let chunk = pairs.len().div_ceil(jobs);
        std::thread::scope(|scope| {
            let handles: Vec<_> = pairs
                .chunks(chunk)
                .map(|slice| scope.spawn(|| slice.iter().filter_map(&check).collect::<Vec<_>>()))
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("verification thread panicked"))
                .collect()
        })
    };
    violations.sort_by(|a, b| (&a.lhs, &a.rhs).cmp(&(&b.lhs, &b.rhs)));
    IsometryReport {
        pairs_checked: pairs.len(),
        violations,
    }
}

/// Parse the tree file format: one `u v` edge per line, vertices as
/// nonnegative integers. Blank lines and `#` comments are skipped.
pub fn parse_tree_file(text: &str) -> Result<Vec<(usize, usize)>, CubeError> {
    let mut edges = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let parse = |tok: Option<&str>| -> Result<usize, CubeError> {
            tok.and_then(|t| t.parse().ok())
                .ok_or_else(|| CubeError::NotATree(format!("bad edge line {line:?}")))
        };
        let u = parse(parts.next())?;
        let v = parse(parts.next())?;
        if parts.next().is_some() {
            return Err(CubeError::NotATree(format!("bad edge line {line:?}")));
        }
        edges.push((u, v));
    }
    Ok(edges)
}

/// A finite tree embedded in the cube: each edge owns a coordinate and a
/// vertex maps to the set of edge coordinates on its root path.
#[derive(Debug, Clone)]
pub struct TreeEmbedding {
    vertices: Vec<usize>,
    edges: Vec<(usize, usize)>,
    root: usize,
    vertex_map: HashMap<usize, CubeVertex>,
}

impl TreeEmbedding {
    pub fn build(edges: &[(usize, usize)], root: usize) -> Result<TreeEmbedding, CubeError> {
        let mut vertices: BTreeSet<usize> = BTreeSet::new();
        vertices.insert(root);
        let mut adjacency: HashMap<usize, Vec<usize>> = HashMap::new();
        for &(u, v) in edges {
            if u == v {
                return Err(CubeError::NotATree(format!("loop at vertex {u}")));
            }
            vertices.insert(u);
            vertices.insert(v);
            adjacency.entry(u).or_default().push(v);
            adjacency.entry(v).or_default().push(u);
        }
        if vertices.len() != edges.len() + 1 {
            return Err(CubeError::NotATree(format!(
                "{} vertices and {} edges cannot form a tree",
                vertices.len(),
                edges.len()
            )));
        }
        // BFS from the root; a fresh cube coordinate per discovered edge
        let mut vertex_map: HashMap<usize, CubeVertex> = HashMap::new();
        vertex_map.insert(root, CubeVertex::empty());
        let mut queue = VecDeque::from([root]);
        let mut next_coord = 0;
        while let Some(u) = queue.pop_front() {
            let image = vertex_map[&u].clone();
            for &v in adjacency.get(&u).into_iter().flatten() {
                if vertex_map.contains_key(&v) {
                    continue;
                }
                let mut coords: BTreeSet<usize> = image.coords.clone();
                coords.insert(next_coord);
                next_coord += 1;
                vertex_map.insert(v, CubeVertex { coords });
                queue.push_back(v);
            }
        }
        if vertex_map.len() != vertices.len() {
            return Err(CubeError::NotATree("graph is disconnected".into()));
        }
        Ok(TreeEmbedding {
            vertices: vertices.into_iter().collect(),
            edges: edges.to_vec(),
            root,
            vertex_map,
        })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn cube_vertex(&self, v: usize) -> Option<&CubeVertex> {
        self.vertex_map.get(&v)
    }

    fn tree_distances_from(&self, start: usize) -> HashMap<usize, usize> {
        let mut adjacency: HashMap<usize, Vec<usize>> = HashMap::new();
        for &(u, v) in &self.edges {
            adjacency.entry(u).or_default().push(v);
            adjacency.entry(v).or_default().push(u);
        }
        let mut dist = HashMap::from([(start, 0usize)]);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let d = dist[&u];
            for &v in adjacency.get(&u).into_iter().flatten() {
                if !dist.contains_key(&v) {
                    dist.insert(v, d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Check that cube images reproduce tree distances, and — for trees
    /// with at most three edges — that the composed images in the free
    /// group do as well.
    pub fn verify_isometry(&self, jobs: usize) -> Result<IsometryReport, CubeError> {
        let n = self.vertices.len();
        let mut tree_dist: HashMap<(usize, usize), usize> = HashMap::new();
        for &u in &self.vertices {
            for (v, d) in self.tree_distances_from(u) {
                tree_dist.insert((u, v), d);
            }
        }

        let mut pairs = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                pairs.push((i, j));
            }
        }

        // cube stage, any size
        let cube_check = |&(i, j): &(usize, usize)| -> Option<Violation> {
            let (u, v) = (self.vertices[i], self.vertices[j]);
            let expected = tree_dist[&(u, v)];
            let actual = self.vertex_map[&u].l1_distance(&self.vertex_map[&v]);
            (actual != expected).then(|| Violation {
                lhs: format!("cube image of {u}"),
                rhs: format!("cube image of {v}"),
                expected,
                actual,
            })
        };
        let mut report = run_pairs(&pairs, jobs, cube_check);

        // free-group stage, only for small trees
        if self.edge_count() <= 3 {
            let embedding = CubeEmbedding::build(self.edge_count())?;
            let images: HashMap<usize, Word> = self
                .vertex_map
                .iter()
                .map(|(&v, cube)| (v, embedding.embed(cube).expect("coords in range")))
                .collect();
            let word_check = |&(i, j): &(usize, usize)| -> Option<Violation> {
                let (u, v) = (self.vertices[i], self.vertices[j]);
                let expected = tree_dist[&(u, v)];
                let actual =
                    biinvariant_distance(&images[&u], &images[&v]).expect("same alphabet");
                (actual != expected).then(|| Violation {
                    lhs: format!("word image of {u}"),
                    rhs: format!("word image of {v}"),
                    expected,
                    actual,
                })
            };
            let word_report = run_pairs(&pairs, jobs, word_check);
            report.pairs_checked += word_report.pairs_checked;
            report.violations.extend(word_report.violations);
        }
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freenorm::cancelation_norm;

    #[test]
    fn vertex_distance_is_symmetric_difference() {
        let u = CubeVertex::from_coords([0, 2]);
        let v = CubeVertex::from_coords([2, 3]);
        assert_eq!(u.l1_distance(&v), 2);
        assert_eq!(u.l1_distance(&u), 0);
        assert_eq!(CubeVertex::empty().l1_distance(&v), 2);
    }

    #[test]
    fn dim_zero_embedding_is_trivial() {
        let e = CubeEmbedding::build(0).unwrap();
        assert_eq!(e.dim(), 0);
        assert!(e.embed(&CubeVertex::empty()).unwrap().is_empty());
    }

    #[test]
    fn dim_one_conjugator_matches_known_word() {
        let e = CubeEmbedding::build(1).unwrap();
        assert_eq!(e.k_values(), &[1]);
        assert_eq!(e.conjugator(0).to_string(), "bbbbaBBBB");
        assert_eq!(cancelation_norm(e.conjugator(0)), 1);
    }

    #[test]
    fn dim_two_k_value_and_image_lengths() {
        let e = CubeEmbedding::build(2).unwrap();
        assert_eq!(e.k_values(), &[1, 10]);
        let g2 = e.conjugator(1);
        assert_eq!(g2.len(), 81);
        // b⁴⁰aB⁴⁰ · b⁴aB⁴ reduces across the B⁴⁰b⁴ seam
        let image = e.embed(&CubeVertex::from_coords([0, 1])).unwrap();
        assert_eq!(image.len(), 90);
        assert_eq!(image.free_reduce().len(), 82);
    }

    #[test]
    fn stage_invariants_hold() {
        let e = CubeEmbedding::build(3).unwrap();
        for (i, (&k, g)) in e.k_values().iter().zip(&e.conjugators).enumerate() {
            assert_eq!(g.len(), 8 * k + 1, "stage {i}");
            let prev = CubeEmbedding::build(i).unwrap();
            let max_prev = prev
                .vertices()
                .map(|v| prev.embed(&v).unwrap().free_reduce().len())
                .max()
                .unwrap_or(0);
            assert!(k > max_prev, "stage {i}: k={k} vs {max_prev}");
        }
    }

    #[test]
    fn embeddings_restrict_to_lower_stages() {
        let big = CubeEmbedding::build(3).unwrap();
        let small = CubeEmbedding::build(2).unwrap();
        for v in small.vertices() {
            assert_eq!(big.embed(&v).unwrap(), small.embed(&v).unwrap());
        }
    }

    #[test]
    fn coord_out_of_range_is_reported() {
        let e = CubeEmbedding::build(1).unwrap();
        assert_eq!(
            e.embed(&CubeVertex::from_coords([1])),
            Err(CubeError::CoordOutOfRange { coord: 1, dim: 1 })
        );
    }

    #[test]
    fn dim_guard() {
        assert_eq!(
            CubeEmbedding::build(5).unwrap_err(),
            CubeError::DimTooLarge { dim: 5, max: 4 }
        );
    }

    #[test]
    fn dim_one_and_two_are_isometric() {
        let report = CubeEmbedding::build(1).unwrap().verify_isometry(1, false).unwrap();
        assert_eq!(report.pairs_checked, 1);
        assert!(report.is_exact());

        let report = CubeEmbedding::build(2).unwrap().verify_isometry(2, false).unwrap();
        assert_eq!(report.pairs_checked, 6);
        assert!(report.is_exact(), "violations: {:?}", report.violations);
    }

    #[test]
    fn tree_parsing_and_validation() {
        assert_eq!(parse_tree_file("0 1\n1 2\n").unwrap(), vec![(0, 1), (1, 2)]);
        assert_eq!(
            parse_tree_file("# comment\n\n0 1\n").unwrap(),
            vec![(0, 1)]
        );
        assert!(parse_tree_file("0\n").is_err());
        assert!(parse_tree_file("0 x\n").is_err());

        assert!(TreeEmbedding::build(&[(0, 0)], 0).is_err());
        // triangle
        assert!(TreeEmbedding::build(&[(0, 1), (1, 2), (2, 0)], 0).is_err());
        // disconnected
        assert!(TreeEmbedding::build(&[(0, 1), (2, 3), (3, 4)], 0).is_err());
    }

    #[test]
    fn single_vertex_tree() {
        let te = TreeEmbedding::build(&[], 0).unwrap();
        assert_eq!(te.cube_vertex(0), Some(&CubeVertex::empty()));
        let report = te.verify_isometry(1).unwrap();
        assert_eq!(report.pairs_checked, 0);
        assert!(report.is_exact());
    }

    #[test]
    fn path_of_three_vertices() {
        let te = TreeEmbedding::build(&[(0, 1), (1, 2)], 0).unwrap();
        assert_eq!(te.cube_vertex(0), Some(&CubeVertex::empty()));
        assert_eq!(te.cube_vertex(1), Some(&CubeVertex::from_coords([0])));
        assert_eq!(te.cube_vertex(2), Some(&CubeVertex::from_coords([0, 1])));
        let report = te.verify_isometry(1).unwrap();
        assert!(report.is_exact(), "violations: {:?}", report.violations);
    }

    #[test]
    fn star_leaves_are_pairwise_distance_two() {
        let te = TreeEmbedding::build(&[(0, 1), (0, 2), (0, 3)], 0).unwrap();
        for u in 1..=3 {
            for v in (u + 1)..=3 {
                assert_eq!(
                    te.cube_vertex(u).unwrap().l1_distance(te.cube_vertex(v).unwrap()),
                    2
                );
            }
        }
        let report = te.verify_isometry(2).unwrap();
        assert!(report.is_exact(), "violations: {:?}", report.violations);
    }

    #[test]
    fn two_vertex_tree_reaches_the_free_group() {
        let te = TreeEmbedding::build(&[(0, 1)], 0).unwrap();
        let report = te.verify_isometry(1).unwrap();
        // 1 cube pair + 1 word pair
        assert_eq!(report.pairs_checked, 2);
        assert!(report.is_exact());
    }
}
