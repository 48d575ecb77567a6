//! Simplicial complexes on at most 64 vertices and their reduced homology
//! over `Q` or `F_p`, computed exactly.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Field characteristic: `0` for the rationals or a prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Characteristic(u32);

impl Characteristic {
    pub const ZERO: Characteristic = Characteristic(0);

    pub fn new(p: u32) -> Result<Self> {
        if p == 0 || is_prime(p) {
            Ok(Characteristic(p))
        } else {
            Err(Error::InvalidCharacteristic(p))
        }
    }

    pub fn value(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut q = 2u64;
    while q * q <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

/// A simplicial complex with faces stored as vertex bitmasks.
///
/// The empty face is explicit, which separates the *void* complex (no faces)
/// from the *irrelevant* complex `{∅}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    num_vertices: usize,
    /// Sorted by size, then by mask.
    faces: Vec<u64>,
}

fn face_key(mask: u64) -> (u32, u64) {
    (mask.count_ones(), mask)
}

impl SimplicialComplex {
    pub fn new(num_vertices: usize, faces: impl IntoIterator<Item = u64>) -> Result<Self> {
        if num_vertices > 64 {
            return Err(Error::TooManyVertices(num_vertices));
        }
        let universe = if num_vertices == 64 {
            u64::MAX
        } else {
            (1u64 << num_vertices) - 1
        };
        let mut faces: Vec<u64> = faces.into_iter().collect();
        if faces.iter().any(|f| f & !universe != 0) {
            return Err(Error::TooManyVertices(num_vertices));
        }
        faces.sort_by_key(|&f| face_key(f));
        faces.dedup();
        let complex = SimplicialComplex {
            num_vertices,
            faces,
        };
        let closed = complex.faces.iter().all(|&f| {
            let mut bits = f;
            while bits != 0 {
                let v = bits & bits.wrapping_neg();
                bits &= bits - 1;
                if !complex.contains_face(f & !v) {
                    return false;
                }
            }
            true
        });
        if closed {
            Ok(complex)
        } else {
            Err(Error::NotDownwardClosed)
        }
    }

    /// The downward closure of the given facets (vertex lists, 0-based).
    pub fn from_facets(num_vertices: usize, facets: &[Vec<usize>]) -> Result<Self> {
        let mut faces = Vec::new();
        for facet in facets {
            if let Some(&v) = facet.iter().find(|&&v| v >= num_vertices.min(64)) {
                return Err(Error::InvalidVertex(v));
            }
            let mask = facet.iter().fold(0u64, |m, &v| m | 1 << v);
            let mut sub = mask;
            loop {
                faces.push(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & mask;
            }
        }
        Self::new(num_vertices, faces)
    }

    pub fn void(num_vertices: usize) -> Self {
        SimplicialComplex {
            num_vertices,
            faces: Vec::new(),
        }
    }

    pub fn irrelevant(num_vertices: usize) -> Self {
        SimplicialComplex {
            num_vertices,
            faces: vec![0],
        }
    }

    /// Faces already sorted and downward closed.
    pub(crate) fn from_sorted_closed(num_vertices: usize, faces: Vec<u64>) -> Self {
        debug_assert!(faces.windows(2).all(|w| face_key(w[0]) < face_key(w[1])));
        SimplicialComplex {
            num_vertices,
            faces,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn faces(&self) -> &[u64] {
        &self.faces
    }

    pub fn is_void(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn is_irrelevant(&self) -> bool {
        self.faces == [0]
    }

    pub fn contains_face(&self, mask: u64) -> bool {
        self.faces
            .binary_search_by_key(&face_key(mask), |&f| face_key(f))
            .is_ok()
    }

    /// Faces with `size` vertices (dimension `size - 1`).
    pub fn faces_of_size(&self, size: u32) -> &[u64] {
        let lo = self.faces.partition_point(|f| f.count_ones() < size);
        let hi = self.faces.partition_point(|f| f.count_ones() <= size);
        &self.faces[lo..hi]
    }

    /// Dimension of the largest face; `None` for the void complex.
    pub fn dimension(&self) -> Option<i32> {
        self.faces.last().map(|f| f.count_ones() as i32 - 1)
    }

    /// `Σ_{k >= -1} (-1)^k f_k`, counting the empty face in dimension -1.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .map(|f| if f.count_ones() % 2 == 0 { -1 } else { 1 })
            .sum()
    }
}

/// Reduced homology ranks, indexed by dimension starting at -1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducedHomology {
    ranks: Vec<u64>,
}

impl ReducedHomology {
    /// Rank of `H̃_dim`; zero outside the stored range.
    pub fn rank(&self, dim: i32) -> u64 {
        usize::try_from(dim + 1)
            .ok()
            .and_then(|i| self.ranks.get(i).copied())
            .unwrap_or(0)
    }

    /// Ranks for dimensions `-1, 0, 1, ...` up to the complex's dimension.
    pub fn ranks(&self) -> &[u64] {
        &self.ranks
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }

    pub fn alternating_sum(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(i, &r)| if i % 2 == 0 { -(r as i64) } else { r as i64 })
            .sum()
    }
}

/// Boundary matrix `∂: C_{size-1} -> C_{size-2}` between faces with `size`
/// vertices and faces with `size - 1` vertices. Rows index the smaller
/// faces. Removing the `j`-th smallest vertex carries sign `(-1)^j`.
fn boundary_matrix(complex: &SimplicialComplex, size: u32) -> Vec<Vec<i64>> {
    let cols = complex.faces_of_size(size);
    let rows = complex.faces_of_size(size - 1);
    let mut m = vec![vec![0i64; cols.len()]; rows.len()];
    for (c, &face) in cols.iter().enumerate() {
        let mut bits = face;
        let mut j = 0;
        while bits != 0 {
            let v = bits & bits.wrapping_neg();
            bits &= bits - 1;
            let r = rows
                .binary_search_by_key(&face_key(face & !v), |&f| face_key(f))
                .expect("complex is downward closed");
            m[r][c] = if j % 2 == 0 { 1 } else { -1 };
            j += 1;
        }
    }
    m
}

/// Reduced homology of `complex` over a field of the given characteristic.
///
/// `rank H̃_k = dim C_k - rank ∂_k - rank ∂_{k+1}`, with `C_{-1}` spanned by
/// the empty face. The void complex has no homology at all; the irrelevant
/// complex has `H̃_{-1}` of rank one.
pub fn reduced_homology_ranks(
    complex: &SimplicialComplex,
    characteristic: Characteristic,
) -> Result<ReducedHomology> {
    let Some(top) = complex.dimension() else {
        return Ok(ReducedHomology { ranks: Vec::new() });
    };
    let top_size = (top + 1) as u32;
    // boundary_rank[s] = rank of ∂ leaving faces of size s (s >= 1).
    let mut boundary_rank = vec![0usize; top_size as usize + 2];
    for size in 1..=top_size {
        let m = boundary_matrix(complex, size);
        boundary_rank[size as usize] = matrix_rank(&m, characteristic)?;
    }
    let ranks = (0..=top_size)
        .map(|size| {
            let dim_c = complex.faces_of_size(size).len();
            (dim_c - boundary_rank[size as usize] - boundary_rank[size as usize + 1]) as u64
        })
        .collect();
    Ok(ReducedHomology { ranks })
}

/// Exact rank of an integer matrix over `Q` (characteristic 0) or `F_p`.
pub fn matrix_rank(matrix: &[Vec<i64>], characteristic: Characteristic) -> Result<usize> {
    match characteristic.value() {
        0 => rank_rational(matrix),
        p => Ok(rank_mod_p(matrix, p as u64)),
    }
}

/// Fraction-free (Bareiss) elimination over the integers. Every intermediate
/// entry is a minor of the input, so the divisions are exact.
fn rank_rational(matrix: &[Vec<i64>]) -> Result<usize> {
    let mut a: Vec<Vec<i128>> = matrix
        .iter()
        .map(|row| row.iter().map(|&v| v as i128).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev: i128 = 1;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, pivot);
        let p = a[rank][col];
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest {
            let factor = row[col];
            for (x, &y) in row[col + 1..].iter_mut().zip(&pivot_row[col + 1..]) {
                let lhs = p.checked_mul(*x).ok_or(Error::EliminationOverflow)?;
                let rhs = factor.checked_mul(y).ok_or(Error::EliminationOverflow)?;
                let num = lhs.checked_sub(rhs).ok_or(Error::EliminationOverflow)?;
                debug_assert_eq!(num % prev, 0);
                *x = num / prev;
            }
            row[col] = 0;
        }
        prev = p;
        rank += 1;
    }
    Ok(rank)
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn rank_mod_p(matrix: &[Vec<i64>], p: u64) -> usize {
    let mut a: Vec<Vec<u64>> = matrix
        .iter()
        .map(|row| row.iter().map(|&v| v.rem_euclid(p as i64) as u64).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, pivot);
        let inv = pow_mod(a[rank][col], p - 2, p);
        for x in &mut a[rank][col..] {
            *x = *x * inv % p;
        }
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest {
            let factor = row[col];
            if factor == 0 {
                continue;
            }
            for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                let sub = factor * y % p;
                *x = (*x + p - sub) % p;
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Characteristic = Characteristic::ZERO;

    fn char_of(p: u32) -> Characteristic {
        Characteristic::new(p).unwrap()
    }

    #[test]
    fn characteristics() {
        assert!(Characteristic::new(0).is_ok());
        assert!(Characteristic::new(2).is_ok());
        assert!(Characteristic::new(65521).is_ok());
        assert_eq!(Characteristic::new(1), Err(Error::InvalidCharacteristic(1)));
        assert_eq!(Characteristic::new(4), Err(Error::InvalidCharacteristic(4)));
    }

    #[test]
    fn conventions() {
        let irr = SimplicialComplex::irrelevant(3);
        assert!(irr.is_irrelevant());
        let h = reduced_homology_ranks(&irr, Q).unwrap();
        assert_eq!(h.rank(-1), 1);
        assert_eq!(h.rank(0), 0);

        let void = SimplicialComplex::void(3);
        assert!(void.is_void());
        assert!(reduced_homology_ranks(&void, Q).unwrap().is_zero());
    }

    #[test]
    fn small_spaces() {
        let points = SimplicialComplex::from_facets(2, &[vec![0], vec![1]]).unwrap();
        let h = reduced_homology_ranks(&points, Q).unwrap();
        assert_eq!(h.ranks(), &[0, 1]);

        let circle =
            SimplicialComplex::from_facets(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let h = reduced_homology_ranks(&circle, Q).unwrap();
        assert_eq!(h.ranks(), &[0, 0, 1]);

        let disk = SimplicialComplex::from_facets(3, &[vec![0, 1, 2]]).unwrap();
        assert!(reduced_homology_ranks(&disk, Q).unwrap().is_zero());
    }

    #[test]
    fn projective_plane_depends_on_characteristic() {
        let facets: Vec<Vec<usize>> = [
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 4],
            [0, 4, 5],
            [0, 1, 5],
            [1, 2, 4],
            [1, 3, 4],
            [1, 3, 5],
            [2, 3, 5],
            [2, 4, 5],
        ]
        .iter()
        .map(|f| f.to_vec())
        .collect();
        let rp2 = SimplicialComplex::from_facets(6, &facets).unwrap();
        assert_eq!(rp2.reduced_euler_characteristic(), 0);
        assert!(reduced_homology_ranks(&rp2, Q).unwrap().is_zero());
        assert!(reduced_homology_ranks(&rp2, char_of(3)).unwrap().is_zero());
        let h2 = reduced_homology_ranks(&rp2, char_of(2)).unwrap();
        assert_eq!((h2.rank(1), h2.rank(2)), (1, 1));
    }

    #[test]
    fn rejects_non_complexes() {
        assert_eq!(
            SimplicialComplex::new(3, [0b011]).unwrap_err(),
            Error::NotDownwardClosed
        );
        assert!(SimplicialComplex::new(2, [0, 0b100]).is_err());
        assert!(SimplicialComplex::new(65, []).is_err());
    }

    #[test]
    fn ranks_of_small_matrices() {
        let m = vec![vec![2, 4], vec![1, 2]];
        assert_eq!(matrix_rank(&m, Q).unwrap(), 1);
        let m = vec![vec![2, 0], vec![0, 3]];
        assert_eq!(matrix_rank(&m, Q).unwrap(), 2);
        assert_eq!(matrix_rank(&m, char_of(2)).unwrap(), 1);
        assert_eq!(matrix_rank(&m, char_of(3)).unwrap(), 1);
        assert_eq!(matrix_rank(&m, char_of(5)).unwrap(), 2);
        let m = vec![vec![0, 1, 1], vec![0, 1, 1], vec![0, 0, 0]];
        assert_eq!(matrix_rank(&m, Q).unwrap(), 1);
        assert_eq!(matrix_rank(&[], Q).unwrap(), 0);
    }
}
