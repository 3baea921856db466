//! Standard orderings of eigenspaces.
//!
//! An ordering `U_0, ..., U_d` of the eigenspaces of a diagonalizable map is
//! standard for a set of actors when every raising actor `X` satisfies
//! `X U_i ⊆ U_i + U_{i+1}` and every lowering actor satisfies
//! `X U_i ⊆ U_{i-1} + U_i` (with `U_{-1} = U_{d+1} = 0`).
//!
//! The search first builds the forced successor relation: if `X U ⊄ U` then
//! exactly one other eigenspace `W` can satisfy `X U ⊆ U + W`, and `W` must
//! be adjacent to `U`. When those edges form a single chain the ordering is
//! determined. Otherwise a backtracking search over all orderings counts the
//! standard ones (at most two are needed to report ambiguity).

use crate::linalg::{inverse, EigenDecomposition, RMatrix, Rational, Subspace};
use num_traits::Zero;
use thiserror::Error;

/// Largest diameter for which the exhaustive fallback is attempted.
pub const MAX_EXHAUSTIVE_DIAMETER: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Raising,
    Lowering,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardOrdering {
    pub eigenspaces: Vec<Subspace>,
    pub eigenvalues: Vec<Rational>,
}

impl StandardOrdering {
    pub fn diameter(&self) -> usize {
        self.eigenspaces.len() - 1
    }

    pub fn dims(&self) -> Vec<usize> {
        self.eigenspaces.iter().map(Subspace::dim).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderingError {
    #[error("map is not diagonalizable")]
    NotDiagonalizable,
    #[error("no ordering of the eigenspaces satisfies the containments")]
    NoStandardOrdering,
    #[error("{count} orderings satisfy the containments; a standard ordering must be unique")]
    AmbiguousOrdering { count: usize },
    #[error("successor relation is not a chain and diameter {diameter} exceeds the exhaustive search limit")]
    SearchTooLarge { diameter: usize },
}

/// `fits[u][w]`: `X U_u ⊆ U_u + U_w`, with `w == n` standing for the zero space.
struct FitTable {
    fits: Vec<Vec<bool>>,
}

impl FitTable {
    /// `spaces` must decompose the whole space. Each image vector is written
    /// in the combined eigenbasis; `X U_u ⊆ U_u + U_w` holds exactly when
    /// every image is supported on the blocks `u` and `w`.
    fn build(actor: &RMatrix, spaces: &[Subspace]) -> Self {
        let n = spaces.len();
        let mut block_of = Vec::new();
        let mut columns = Vec::new();
        for (k, u) in spaces.iter().enumerate() {
            for b in u.basis() {
                block_of.push(k);
                columns.push(b.clone());
            }
        }
        let basis = RMatrix::from_columns(actor.rows(), &columns);
        let to_coords =
            inverse(&basis).expect("eigenspaces of a diagonalizable map span the space");
        let fits = spaces
            .iter()
            .enumerate()
            .map(|(k, u)| {
                let mut support = vec![false; n];
                for v in u.image_vectors(actor) {
                    for (idx, c) in to_coords.apply(&v).iter().enumerate() {
                        if !c.is_zero() {
                            support[block_of[idx]] = true;
                        }
                    }
                }
                (0..=n)
                    .map(|w| (0..n).all(|b| !support[b] || b == k || b == w))
                    .collect()
            })
            .collect();
        Self { fits }
    }

    fn holds(&self, u: usize, w: Option<usize>) -> bool {
        let n = self.fits.len();
        self.fits[u][w.unwrap_or(n)]
    }
}

fn is_standard(order: &[usize], tables: &[(FitTable, Direction)]) -> bool {
    (0..order.len()).all(|i| {
        let next = order.get(i + 1).copied();
        let prev = i.checked_sub(1).map(|p| order[p]);
        tables.iter().all(|(t, dir)| match dir {
            Direction::Raising => t.holds(order[i], next),
            Direction::Lowering => t.holds(order[i], prev),
        })
    })
}

/// Forced successor edges, or `None` when some eigenspace has no admissible
/// neighbour at all.
fn forced_edges(n: usize, tables: &[(FitTable, Direction)]) -> Option<Vec<(usize, usize)>> {
    let mut edges = Vec::new();
    for (t, dir) in tables {
        for u in 0..n {
            if t.holds(u, None) {
                continue;
            }
            let w = (0..n).find(|&w| w != u && t.holds(u, Some(w)))?;
            let edge = match dir {
                Direction::Raising => (u, w),
                Direction::Lowering => (w, u),
            };
            if !edges.contains(&edge) {
                edges.push(edge);
            }
        }
    }
    Some(edges)
}

fn chain_from_edges(n: usize, edges: &[(usize, usize)]) -> Option<Vec<usize>> {
    if edges.len() != n - 1 {
        return None;
    }
    let mut next = vec![None; n];
    let mut has_prev = vec![false; n];
    for &(u, w) in edges {
        if next[u].is_some() || has_prev[w] {
            return None;
        }
        next[u] = Some(w);
        has_prev[w] = true;
    }
    let start = (0..n).find(|&u| !has_prev[u])?;
    let mut order = vec![start];
    while let Some(w) = next[*order.last().unwrap()] {
        if order.len() > n {
            return None;
        }
        order.push(w);
    }
    (order.len() == n).then_some(order)
}

fn count_standard(
    n: usize,
    tables: &[(FitTable, Direction)],
    order: &mut Vec<usize>,
    used: &mut [bool],
    found: &mut Vec<Vec<usize>>,
) {
    if found.len() >= 2 {
        return;
    }
    if order.len() == n {
        if is_standard(order, tables) {
            found.push(order.clone());
        }
        return;
    }
    for u in 0..n {
        if used[u] {
            continue;
        }
        if let Some(&prev) = order.last() {
            let ok = tables.iter().all(|(t, dir)| match dir {
                Direction::Raising => t.holds(prev, Some(u)),
                Direction::Lowering => t.holds(u, Some(prev)),
            });
            if !ok {
                continue;
            }
        } else if tables
            .iter()
            .any(|(t, dir)| *dir == Direction::Lowering && !t.holds(u, None))
        {
            continue;
        }
        used[u] = true;
        order.push(u);
        count_standard(n, tables, order, used, found);
        order.pop();
        used[u] = false;
    }
}

/// Finds the unique standard ordering of `primary`'s eigenspaces with respect
/// to the given actors.
pub fn find_standard_ordering(
    primary: &EigenDecomposition,
    actors: &[(&RMatrix, Direction)],
) -> Result<StandardOrdering, OrderingError> {
    if !primary.diagonalizable {
        return Err(OrderingError::NotDiagonalizable);
    }
    let spaces: Vec<Subspace> = primary.pairs.iter().map(|p| p.eigenspace.clone()).collect();
    let n = spaces.len();
    let build = |order: Vec<usize>| StandardOrdering {
        eigenspaces: order.iter().map(|&i| spaces[i].clone()).collect(),
        eigenvalues: order
            .iter()
            .map(|&i| primary.pairs[i].value.clone())
            .collect(),
    };
    if n <= 1 {
        return Ok(build((0..n).collect()));
    }
    let tables: Vec<(FitTable, Direction)> = actors
        .iter()
        .map(|(x, dir)| (FitTable::build(x, &spaces), *dir))
        .collect();
    let edges = forced_edges(n, &tables).ok_or(OrderingError::NoStandardOrdering)?;
    if let Some(order) = chain_from_edges(n, &edges) {
        return if is_standard(&order, &tables) {
            Ok(build(order))
        } else {
            Err(OrderingError::NoStandardOrdering)
        };
    }
    if n - 1 > MAX_EXHAUSTIVE_DIAMETER {
        return Err(OrderingError::SearchTooLarge { diameter: n - 1 });
    }
    let mut found = Vec::new();
    count_standard(n, &tables, &mut Vec::new(), &mut vec![false; n], &mut found);
    match found.len() {
        0 => Err(OrderingError::NoStandardOrdering),
        1 => Ok(build(found.pop().unwrap())),
        count => Err(OrderingError::AmbiguousOrdering { count }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eigen_decompose, int};

    #[test]
    fn single_eigenspace_is_forced() {
        let e = eigen_decompose(&RMatrix::identity(3)).unwrap();
        let x = RMatrix::from_i64(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        let o = find_standard_ordering(&e, &[(&x, Direction::Raising)]).unwrap();
        assert_eq!(o.diameter(), 0);
        assert_eq!(o.dims(), vec![3]);
    }

    #[test]
    fn d1_fixture_orders_by_containment() {
        let app = RMatrix::from_i64(&[&[-1, 0], &[0, 1]]);
        let a = RMatrix::from_i64(&[&[-1, 0], &[1, 1]]);
        let ap = RMatrix::from_i64(&[&[-1, 0], &[2, 1]]);
        let e = eigen_decompose(&app).unwrap();
        let o = find_standard_ordering(&e, &[(&a, Direction::Raising), (&ap, Direction::Raising)])
            .unwrap();
        assert_eq!(o.eigenvalues, vec![int(-1), int(1)]);
        assert_eq!(o.eigenspaces[0].basis(), &[vec![int(1), int(0)]]);
        assert_eq!(o.eigenspaces[1].basis(), &[vec![int(0), int(1)]]);

        // The reversed direction forces the reversed order.
        let o = find_standard_ordering(&e, &[(&a, Direction::Lowering)]).unwrap();
        assert_eq!(o.eigenvalues, vec![int(1), int(-1)]);
    }

    #[test]
    fn commuting_actor_leaves_ordering_ambiguous() {
        let e = eigen_decompose(&RMatrix::from_i64(&[&[-1, 0], &[0, 1]])).unwrap();
        let x = RMatrix::identity(2);
        let err = find_standard_ordering(&e, &[(&x, Direction::Raising)]).unwrap_err();
        assert_eq!(err, OrderingError::AmbiguousOrdering { count: 2 });
    }

    #[test]
    fn mixing_actor_has_no_ordering() {
        let e = eigen_decompose(&RMatrix::diagonal(&[int(0), int(1), int(2)])).unwrap();
        // Sends e0 into span(e1, e2) and e1 into span(e0, e2): no chain fits.
        let x = RMatrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[1, 1, 0]]);
        let err = find_standard_ordering(&e, &[(&x, Direction::Raising)]).unwrap_err();
        assert_eq!(err, OrderingError::NoStandardOrdering);
    }
}
