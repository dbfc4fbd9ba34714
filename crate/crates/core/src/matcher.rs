//! 2x2 block partitioning and least-RMSE block matching over LL subbands.

use rayon::prelude::*;

use crate::error::{Result, StegoError};
use crate::plane::Plane;
use crate::scalar::Real;

/// Samples of one 2x2 block as `[top-left, top-right, bottom-left, bottom-right]`.
pub type Block<F> = [F; 4];

/// Block-grid dimensions: a plane of `2*rows` x `2*cols` samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridDims {
    pub rows: usize,
    pub cols: usize,
}

impl GridDims {
    pub fn new(rows: usize, cols: usize) -> Self {
        Self { rows, cols }
    }

    /// Grid of a plane with the given `(width, height)`.
    pub fn of_plane_dims((width, height): (usize, usize)) -> Self {
        Self {
            rows: height / 2,
            cols: width / 2,
        }
    }

    pub fn count(&self) -> usize {
        self.rows * self.cols
    }

    /// `(row, col)` of block `k`, row-major.
    pub fn position(&self, k: usize) -> (usize, usize) {
        (k / self.cols, k % self.cols)
    }
}

/// A plane cut into non-overlapping 2x2 blocks, enumerated row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockGrid<F> {
    dims: GridDims,
    blocks: Vec<Block<F>>,
}

impl<F: Real> BlockGrid<F> {
    pub fn dims(&self) -> GridDims {
        self.dims
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block(&self, k: usize) -> &Block<F> {
        &self.blocks[k]
    }

    pub fn blocks(&self) -> &[Block<F>] {
        &self.blocks
    }
}

pub fn partition_blocks<F: Real>(p: &Plane<F>) -> Result<BlockGrid<F>> {
    p.require_even()?;
    let dims = GridDims::of_plane_dims(p.dims());
    let mut blocks = Vec::with_capacity(dims.count());
    for br in 0..dims.rows {
        for bc in 0..dims.cols {
            let (r, c) = (2 * br, 2 * bc);
            blocks.push([
                p.get(r, c),
                p.get(r, c + 1),
                p.get(r + 1, c),
                p.get(r + 1, c + 1),
            ]);
        }
    }
    Ok(BlockGrid { dims, blocks })
}

#[inline]
fn squared_error<F: Real>(a: &Block<F>, b: &Block<F>) -> F {
    a.iter()
        .zip(b)
        .fold(F::zero(), |acc, (&x, &y)| acc + (x - y) * (x - y))
}

/// Root mean square error over the four samples.
pub fn block_rmse<F: Real>(a: &Block<F>, b: &Block<F>) -> F {
    (squared_error(a, b) / F::from(4).unwrap()).sqrt()
}

/// Stego key: for every secret block, the index of its best cover block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyTable {
    entries: Vec<usize>,
    cover_grid: GridDims,
}

impl KeyTable {
    pub fn new(entries: Vec<usize>, cover_grid: GridDims) -> Result<Self> {
        let n_c = cover_grid.count();
        if let Some((slot, &entry)) = entries.iter().enumerate().find(|(_, &e)| e >= n_c) {
            return Err(StegoError::AddressOutOfRange { slot, entry, n_c });
        }
        Ok(Self {
            entries,
            cover_grid,
        })
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn cover_grid(&self) -> GridDims {
        self.cover_grid
    }

    /// Number of cover blocks addressable by this key.
    pub fn n_c(&self) -> usize {
        self.cover_grid.count()
    }

    /// Number of secret blocks.
    pub fn n_s(&self) -> usize {
        self.entries.len()
    }
}

/// Exhaustive least-RMSE search. Ties go to the lowest cover index.
///
/// Comparison uses the sum of squared differences, which orders candidates
/// the same way as RMSE.
pub fn generate_key<F: Real>(cover_ll: &Plane<F>, secret_ll: &Plane<F>) -> Result<KeyTable> {
    if cover_ll.is_empty() || secret_ll.is_empty() {
        return Err(StegoError::EmptyPlane);
    }
    let cover = partition_blocks(cover_ll)?;
    let secret = partition_blocks(secret_ll)?;
    let entries = secret
        .blocks
        .par_iter()
        .map(|s| {
            let mut best = 0;
            let mut best_err = squared_error(s, &cover.blocks[0]);
            for (k, c) in cover.blocks.iter().enumerate().skip(1) {
                let err = squared_error(s, c);
                if err < best_err {
                    best = k;
                    best_err = err;
                }
            }
            best
        })
        .collect();
    KeyTable::new(entries, cover.dims)
}

/// Builds the secret LL plane by copying cover block `key[i]` into secret slot `i`.
pub fn reconstruct_secret_ll<F: Real>(
    cover_ll: &Plane<F>,
    key: &KeyTable,
    secret_grid: GridDims,
) -> Result<Plane<F>> {
    let cover = partition_blocks(cover_ll)?;
    if cover.dims != key.cover_grid {
        return Err(StegoError::DimensionMismatch(format!(
            "cover LL grid {:?} does not match key grid {:?}",
            cover.dims, key.cover_grid
        )));
    }
    if secret_grid.count() != key.n_s() {
        return Err(StegoError::DimensionMismatch(format!(
            "secret grid {:?} holds {} blocks, key has {}",
            secret_grid,
            secret_grid.count(),
            key.n_s()
        )));
    }
    let mut out = Plane::filled(2 * secret_grid.cols, 2 * secret_grid.rows, F::zero());
    for (slot, &entry) in key.entries.iter().enumerate() {
        if entry >= cover.len() {
            return Err(StegoError::AddressOutOfRange {
                slot,
                entry,
                n_c: cover.len(),
            });
        }
        let [a, b, c, d] = cover.blocks[entry];
        let (br, bc) = secret_grid.position(slot);
        let (r, col) = (2 * br, 2 * bc);
        out.set(r, col, a);
        out.set(r, col + 1, b);
        out.set(r + 1, col, c);
        out.set(r + 1, col + 1, d);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane(w: usize, h: usize, v: &[f64]) -> Plane<f64> {
        Plane::new(w, h, v.to_vec()).unwrap()
    }

    #[test]
    fn partition_counts() {
        let g = partition_blocks(&Plane::filled(4, 4, 0.0f64)).unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(g.dims(), GridDims::new(2, 2));
        assert_eq!(
            partition_blocks(&Plane::filled(128, 128, 0.0f64))
                .unwrap()
                .len(),
            4096
        );
        assert_eq!(
            partition_blocks(&Plane::filled(64, 64, 0.0f64))
                .unwrap()
                .len(),
            1024
        );
        assert!(partition_blocks(&Plane::filled(3, 4, 0.0f64)).is_err());
    }

    #[test]
    fn partition_is_row_major() {
        let p = Plane::from_fn(4, 4, |r, c| (r * 4 + c) as f64);
        let g = partition_blocks(&p).unwrap();
        assert_eq!(g.block(0), &[0.0, 1.0, 4.0, 5.0]);
        assert_eq!(g.block(1), &[2.0, 3.0, 6.0, 7.0]);
        assert_eq!(g.block(2), &[8.0, 9.0, 12.0, 13.0]);
        assert_eq!(g.dims().position(3), (1, 1));
    }

    #[test]
    fn rmse_examples() {
        assert_eq!(block_rmse(&[3.0f64; 4], &[3.0; 4]), 0.0);
        assert_eq!(block_rmse(&[1.0f64; 4], &[9.0; 4]), 8.0);
        assert_eq!(block_rmse(&[0.0f64; 4], &[2.0, 0.0, 0.0, 0.0]), 1.0);
    }

    #[test]
    fn key_picks_closest_block() {
        let cover = plane(4, 2, &[1.0, 1.0, 9.0, 9.0, 1.0, 1.0, 9.0, 9.0]);
        let secret = plane(2, 2, &[8.0; 4]);
        let key = generate_key(&cover, &secret).unwrap();
        assert_eq!(key.entries(), &[1]);
        assert_eq!(
            reconstruct_secret_ll(&cover, &key, GridDims::new(1, 1))
                .unwrap()
                .samples(),
            &[9.0; 4]
        );
    }

    #[test]
    fn ties_go_to_lowest_index() {
        let cover = Plane::filled(8, 8, 5.0f64);
        let secret = Plane::from_fn(4, 4, |r, c| (r + c) as f64);
        let key = generate_key(&cover, &secret).unwrap();
        assert!(key.entries().iter().all(|&e| e == 0));
    }

    #[test]
    fn exact_match_wins() {
        let cover = Plane::from_fn(8, 4, |r, c| (r * 8 + c) as f64);
        let g = partition_blocks(&cover).unwrap();
        let secret = plane(2, 2, g.block(5));
        assert_eq!(generate_key(&cover, &secret).unwrap().entries(), &[5]);
    }

    #[test]
    fn empty_planes_rejected() {
        let empty = Plane::new(0, 0, Vec::<f64>::new()).unwrap();
        assert!(matches!(
            generate_key(&empty, &Plane::filled(2, 2, 0.0)),
            Err(StegoError::EmptyPlane)
        ));
    }

    #[test]
    fn out_of_range_entry_rejected() {
        let grid = GridDims::new(1, 2);
        assert!(matches!(
            KeyTable::new(vec![2], grid),
            Err(StegoError::AddressOutOfRange {
                entry: 2,
                n_c: 2,
                ..
            })
        ));
    }

    #[test]
    fn reconstruct_checks_grid() {
        let cover = Plane::filled(4, 2, 0.0f64);
        let key = KeyTable::new(vec![0], GridDims::new(2, 2)).unwrap();
        assert!(reconstruct_secret_ll(&cover, &key, GridDims::new(1, 1)).is_err());
        let key = KeyTable::new(vec![0, 1], GridDims::new(1, 2)).unwrap();
        assert!(reconstruct_secret_ll(&cover, &key, GridDims::new(1, 1)).is_err());
    }
}
