//! Symmetric bilinear forms over GF(2), bit-packed one row per `u64`.
//!
//! Everything the weight systems need reduces to ranks and determinants of
//! (marked) adjacency matrices, so the representation is deliberately small:
//! symmetric zero-diagonal adjacency, with a vertex mark contributing a 1 on
//! the diagonal.

use crate::graph::MarkedGraph;

/// A symmetric matrix over GF(2); row `i` is the bitmask `rows[i]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gf2SymmetricMatrix {
    n: usize,
    rows: Vec<u64>,
}

/// Congruence class of a marked-graph adjacency form, written as a direct
/// sum of `n1` copies of `[1]`, `n2` zero summands, and `n3` hyperbolic
/// planes `[[0,1],[1,0]]`, with no `[1]` and hyperbolic plane coexisting.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct CaravanClass {
    pub ones: usize,
    pub zeros: usize,
    pub hyperbolics: usize,
}

impl Gf2SymmetricMatrix {
    pub fn zero(n: usize) -> Self {
        assert!(n <= 64, "matrix side exceeds bitmask width");
        Gf2SymmetricMatrix {
            n,
            rows: vec![0; n],
        }
    }

    pub fn from_rows(rows: Vec<u64>) -> Self {
        let n = rows.len();
        assert!(n <= 64);
        let m = Gf2SymmetricMatrix { n, rows };
        for i in 0..n {
            assert!(
                n == 64 || m.rows[i] >> n == 0,
                "row {i} has bits past column {n}"
            );
            for j in 0..i {
                assert_eq!(
                    m.get(i, j),
                    m.get(j, i),
                    "matrix is not symmetric at ({i},{j})"
                );
            }
        }
        m
    }

    /// Marked adjacency form of a graph: `A[i][j] = 1` iff `i–j` is an edge,
    /// `A[i][i] = 1` iff vertex `i` is marked.
    pub fn from_graph(g: &MarkedGraph) -> Self {
        let n = g.order();
        let mut rows = vec![0u64; n];
        for (i, row) in rows.iter_mut().enumerate() {
            *row = g.neighbors(i);
            if g.is_marked(i) {
                *row |= 1 << i;
            }
        }
        Gf2SymmetricMatrix { n, rows }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let (a, b) = ((1u64 << j), (1u64 << i));
        if value {
            self.rows[i] |= a;
            self.rows[j] |= b;
        } else {
            self.rows[i] &= !a;
            self.rows[j] &= !b;
        }
    }

    /// True when every diagonal entry vanishes (the form is alternating).
    pub fn is_alternating(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, &row)| row >> i & 1 == 0)
    }

    /// Rank by Gaussian elimination. The empty matrix has rank 0.
    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.n {
            let Some(pivot) = (rank..self.n).find(|&r| rows[r] >> col & 1 == 1) else {
                continue;
            };
            rows.swap(rank, pivot);
            let pivot_row = rows[rank];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && *row >> col & 1 == 1 {
                    *row ^= pivot_row;
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn nullity(&self) -> usize {
        self.n - self.rank()
    }

    /// Determinant over GF(2): 1 exactly when the matrix has full rank.
    /// The empty matrix has determinant 1.
    pub fn det(&self) -> u8 {
        (self.rank() == self.n) as u8
    }

    /// Symmetric row-and-column operation `M -> E M E^T` where `E` adds row
    /// `b` to row `a`. Preserves rank, determinant, and congruence class.
    pub fn transvect(&mut self, a: usize, b: usize) {
        debug_assert!(a != b);
        // E M: row a += row b.  (E M) E^T: column a += column b, which for
        // the already-updated rows means toggling bit a wherever bit b is set.
        self.rows[a] ^= self.rows[b];
        for row in &mut self.rows {
            if *row >> b & 1 == 1 {
                *row ^= 1 << a;
            }
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.n;
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().map(|&r| r << n));
        Self::from_rows(rows)
    }

    /// Reduce to the congruence normal form `[1]^n1 ⊕ 0^n2 ⊕ H^n3` (where
    /// `H` is the hyperbolic plane), then apply `[1] ⊕ H ≅ [1]^3` so that
    /// `n1` and `n3` are never both nonzero.
    pub fn congruence_class(&self) -> CaravanClass {
        let mut m = self.clone();
        let n = m.n;
        let mut ones = 0;
        let mut hyperbolics = 0;
        let mut frontier = 0; // rows before this index are finished blocks

        while frontier < n {
            // Prefer a diagonal 1 at or after the frontier.
            if let Some(i) = (frontier..n).find(|&i| m.get(i, i)) {
                if i != frontier {
                    m.swap_vertices(i, frontier);
                }
                let p = frontier;
                for l in p + 1..n {
                    if m.get(l, p) {
                        m.transvect(l, p);
                    }
                }
                ones += 1;
                frontier += 1;
                continue;
            }
            // Otherwise find any off-diagonal 1 to found a hyperbolic pair.
            let mut pair = None;
            'scan: for i in frontier..n {
                for j in i + 1..n {
                    if m.get(i, j) {
                        pair = Some((i, j));
                        break 'scan;
                    }
                }
            }
            let Some((i, j)) = pair else {
                break; // all-zero tail
            };
            if i != frontier {
                m.swap_vertices(i, frontier);
            }
            if j != frontier + 1 {
                m.swap_vertices(j, frontier + 1);
            }
            let (p, q) = (frontier, frontier + 1);
            for l in q + 1..n {
                if m.get(l, p) {
                    m.transvect(l, q);
                }
                if m.get(l, q) {
                    m.transvect(l, p);
                }
            }
            hyperbolics += 1;
            frontier += 2;
        }

        // [1] ⊕ H and [1]^3 are congruent over GF(2); fold all hyperbolic
        // planes into ones whenever a single [1] is present.
        if ones > 0 {
            ones += 2 * hyperbolics;
            hyperbolics = 0;
        }
        let class = CaravanClass {
            ones,
            zeros: n - ones - 2 * hyperbolics,
            hyperbolics,
        };
        debug_assert_eq!(class.rank(), self.rank());
        class
    }

    fn swap_vertices(&mut self, a: usize, b: usize) {
        self.rows.swap(a, b);
        let (ba, bb) = (1u64 << a, 1u64 << b);
        for row in &mut self.rows {
            let hit_a = *row & ba != 0;
            let hit_b = *row & bb != 0;
            if hit_a != hit_b {
                *row ^= ba | bb;
            }
        }
    }
}

impl CaravanClass {
    pub fn degree(&self) -> usize {
        self.ones + self.zeros + 2 * self.hyperbolics
    }

    pub fn rank(&self) -> usize {
        self.ones + 2 * self.hyperbolics
    }

    /// The representative matrix: ones, then zeros, then hyperbolic planes.
    pub fn matrix(&self) -> Gf2SymmetricMatrix {
        let mut m = Gf2SymmetricMatrix::zero(self.degree());
        for i in 0..self.ones {
            m.set(i, i, true);
        }
        let base = self.ones + self.zeros;
        for h in 0..self.hyperbolics {
            m.set(base + 2 * h, base + 2 * h + 1, true);
        }
        m
    }
}
