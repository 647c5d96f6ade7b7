//! Machine-integer representation of algebras over GF(p) for exhaustive
//! scans of GL(n, p) and of whole MSC spaces.

use rayon::prelude::*;

use crate::algebra::{LinMap, Msc};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::Mat;

/// `|GL(n, p)| = prod_{k<n} (p^n - p^k)`, saturating.
pub fn gl_order(n: usize, p: u64) -> u128 {
    let q = p as u128;
    let pn = q.saturating_pow(n as u32);
    (0..n as u32).fold(1u128, |acc, k| acc.saturating_mul(pn - q.saturating_pow(k)))
}

pub(crate) fn check_budget(required: u128, budget: u128) -> Result<()> {
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    Ok(())
}

pub(crate) fn prime_of(field: FieldSpec) -> Result<u32> {
    match field {
        FieldSpec::Prime(p) => Ok(p as u32),
        FieldSpec::Rationals => Err(Error::NotFiniteField),
    }
}

/// Square `n x n` matrix over GF(p) as row-major residues.
pub type SmallMat = Vec<u32>;

pub fn det_mod(m: &[u32], n: usize, p: u32) -> u32 {
    let p64 = p as u64;
    let mut a: Vec<u64> = m.iter().map(|&x| x as u64).collect();
    let mut det = 1u64;
    for c in 0..n {
        let Some(r) = (c..n).find(|&r| a[r * n + c] != 0) else {
            return 0;
        };
        if r != c {
            for j in 0..n {
                a.swap(r * n + j, c * n + j);
            }
            det = (p64 - det) % p64;
        }
        let piv = a[c * n + c];
        det = det * piv % p64;
        let inv = crate::field::pow_mod(piv, p64 - 2, p64);
        for i in c + 1..n {
            let f = a[i * n + c] * inv % p64;
            if f == 0 {
                continue;
            }
            for j in c..n {
                a[i * n + j] = (a[i * n + j] + p64 - f * a[c * n + j] % p64) % p64;
            }
        }
    }
    det as u32
}

pub fn inv_mod(m: &[u32], n: usize, p: u32) -> Option<SmallMat> {
    let p64 = p as u64;
    let w = 2 * n;
    let mut a = vec![0u64; n * w];
    for i in 0..n {
        for j in 0..n {
            a[i * w + j] = m[i * n + j] as u64;
        }
        a[i * w + n + i] = 1;
    }
    for c in 0..n {
        let r = (c..n).find(|&r| a[r * w + c] != 0)?;
        for j in 0..w {
            a.swap(r * w + j, c * w + j);
        }
        let inv = crate::field::pow_mod(a[c * w + c], p64 - 2, p64);
        for j in 0..w {
            a[c * w + j] = a[c * w + j] * inv % p64;
        }
        for i in 0..n {
            if i == c || a[i * w + c] == 0 {
                continue;
            }
            let f = a[i * w + c];
            for j in 0..w {
                a[i * w + j] = (a[i * w + j] + p64 - f * a[c * w + j] % p64) % p64;
            }
        }
    }
    Some(
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| a[i * w + n + j] as u32)
            .collect(),
    )
}

pub fn small_to_linmap(g: &[u32], n: usize, p: u32) -> LinMap {
    let field = FieldSpec::Prime(p as u64);
    let data: Vec<Scalar> = g.iter().map(|&v| field.residue(v as u64)).collect();
    LinMap::new(Mat::from_vec(field, n, n, data).expect("n^2 entries")).expect("square")
}

pub fn linmap_to_small(g: &Mat) -> Result<SmallMat> {
    g.data()
        .iter()
        .map(|s| s.residue().map(|v| v as u32).ok_or(Error::NotFiniteField))
        .collect()
}

fn decode_into(mut idx: u64, p: u32, out: &mut [u32]) {
    for slot in out.iter_mut().rev() {
        *slot = (idx % p as u64) as u32;
        idx /= p as u64;
    }
}

/// Increments a base-p odometer (last entry fastest). Returns false on wrap.
fn increment(m: &mut [u32], p: u32) -> bool {
    for slot in m.iter_mut().rev() {
        *slot += 1;
        if *slot < p {
            return true;
        }
        *slot = 0;
    }
    false
}

/// Invertible `n x n` matrices over GF(p) satisfying `keep`, in lexicographic
/// order of their row-major entries. The scan is split by entry prefix
/// across the current rayon pool and merged in order.
pub fn scan_gl<F>(n: usize, p: u32, keep: F) -> Vec<SmallMat>
where
    F: Fn(&[u32]) -> bool + Sync,
{
    let len = n * n;
    let prefix_len = len.min(2);
    let chunk_count = (p as u64).pow(prefix_len as u32);
    let chunk_size = (p as u64).pow((len - prefix_len) as u32);
    (0..chunk_count)
        .into_par_iter()
        .map(|chunk| {
            let mut found = Vec::new();
            let mut m = vec![0u32; len];
            decode_into(chunk * chunk_size, p, &mut m);
            for _ in 0..chunk_size {
                if det_mod(&m, n, p) != 0 && keep(&m) {
                    found.push(m.clone());
                }
                increment(&mut m, p);
            }
            found
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// All of GL(n, p) with inverses, lexicographic order.
#[derive(Clone, Debug)]
pub struct GlGroup {
    pub n: usize,
    pub p: u32,
    pub elements: Vec<SmallMat>,
    pub inverses: Vec<SmallMat>,
}

impl GlGroup {
    pub fn new(n: usize, p: u32) -> Self {
        let elements = scan_gl(n, p, |_| true);
        let inverses = elements
            .iter()
            .map(|g| inv_mod(g, n, p).expect("invertible"))
            .collect();
        GlGroup {
            n,
            p,
            elements,
            inverses,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// An algebra over GF(p) as a row-major `n x n^2` residue array.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SmallMsc {
    pub n: usize,
    pub p: u32,
    pub a: Vec<u32>,
}

impl SmallMsc {
    pub fn from_msc(msc: &Msc) -> Result<Self> {
        let p = prime_of(msc.field())?;
        Ok(SmallMsc {
            n: msc.dim(),
            p,
            a: linmap_to_small(msc.entries())?,
        })
    }

    pub fn to_msc(&self) -> Msc {
        let field = FieldSpec::Prime(self.p as u64);
        let data = self.a.iter().map(|&v| field.residue(v as u64)).collect();
        Msc::new(Mat::from_vec(field, self.n, self.n * self.n, data).expect("shape")).expect("shape")
    }

    /// Number of MSCs of dimension `n` over GF(p), saturating.
    pub fn space_size(n: usize, p: u32) -> u128 {
        (p as u128).saturating_pow((n * n * n) as u32)
    }

    /// Base-p index of the row-major entries, first entry most significant.
    pub fn index(&self) -> u64 {
        self.a
            .iter()
            .fold(0u64, |acc, &v| acc * self.p as u64 + v as u64)
    }

    pub fn from_index(n: usize, p: u32, idx: u64) -> Self {
        let mut a = vec![0u32; n * n * n];
        decode_into(idx, p, &mut a);
        SmallMsc { n, p, a }
    }

    #[inline]
    fn at(&self, k: usize, col: usize) -> u64 {
        self.a[k * self.n * self.n + col] as u64
    }

    /// `gA == A(g ⊗ g)`, column by column with early exit. Does not check
    /// invertibility.
    pub fn preserved_by(&self, g: &[u32]) -> bool {
        self.maps_to(self, g)
    }

    /// `g A == B (g ⊗ g)`, i.e. `g` carries this algebra onto `target`.
    pub fn maps_to(&self, target: &SmallMsc, g: &[u32]) -> bool {
        let n = self.n;
        let p = self.p as u64;
        let mut lhs = vec![0u64; n];
        let mut rhs = vec![0u64; n];
        for i in 0..n {
            for j in 0..n {
                let c = i * n + j;
                for (k, l) in lhs.iter_mut().enumerate() {
                    *l = (0..n).map(|m| g[k * n + m] as u64 * self.at(m, c)).sum::<u64>() % p;
                }
                rhs.iter_mut().for_each(|r| *r = 0);
                for l in 0..n {
                    let gli = g[l * n + i] as u64;
                    if gli == 0 {
                        continue;
                    }
                    for m in 0..n {
                        let w = gli * g[m * n + j] as u64 % p;
                        if w == 0 {
                            continue;
                        }
                        for (k, r) in rhs.iter_mut().enumerate() {
                            *r = (*r + w * target.at(k, l * n + m)) % p;
                        }
                    }
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// `g A (h ⊗ h)` with `h = g^{-1}` supplied by the caller.
    pub fn transform(&self, g: &[u32], ginv: &[u32]) -> SmallMsc {
        let n = self.n;
        let nn = n * n;
        let p = self.p as u64;
        // C = A (h ⊗ h): column (i,j) = sum_{l,m} A[:, (l,m)] h_li h_mj
        let mut c = vec![0u64; n * nn];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    let hli = ginv[l * n + i] as u64;
                    if hli == 0 {
                        continue;
                    }
                    for m in 0..n {
                        let w = hli * ginv[m * n + j] as u64 % p;
                        if w == 0 {
                            continue;
                        }
                        for k in 0..n {
                            let idx = k * nn + i * n + j;
                            c[idx] = (c[idx] + w * self.at(k, l * n + m)) % p;
                        }
                    }
                }
            }
        }
        let mut out = vec![0u32; n * nn];
        for k in 0..n {
            for col in 0..nn {
                out[k * nn + col] = ((0..n)
                    .map(|m| g[k * n + m] as u64 * c[m * nn + col])
                    .sum::<u64>()
                    % p) as u32;
            }
        }
        SmallMsc {
            n,
            p: self.p,
            a: out,
        }
    }

    /// Smallest index in the GL-orbit.
    pub fn orbit_min_index(&self, gl: &GlGroup) -> u64 {
        gl.elements
            .iter()
            .zip(&gl.inverses)
            .map(|(g, h)| self.transform(g, h).index())
            .min()
            .unwrap_or_else(|| self.index())
    }

    /// All distinct indices in the GL-orbit, sorted.
    pub fn orbit_indices(&self, gl: &GlGroup) -> Vec<u64> {
        let mut v: Vec<u64> = gl
            .elements
            .iter()
            .zip(&gl.inverses)
            .map(|(g, h)| self.transform(g, h).index())
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_orders() {
        assert_eq!(gl_order(2, 2), 6);
        assert_eq!(gl_order(2, 3), 48);
        assert_eq!(gl_order(2, 5), 480);
        assert_eq!(gl_order(3, 5), 1_488_000);
        assert_eq!(GlGroup::new(2, 2).len(), 6);
        assert_eq!(GlGroup::new(2, 3).len(), 48);
    }

    #[test]
    fn transform_matches_generic_change_basis() {
        let gf3 = FieldSpec::prime(3).unwrap();
        let a = Msc::from_i64(gf3, &[&[1, 2, 0, 1], &[0, 1, 2, 2]]).unwrap();
        let sa = SmallMsc::from_msc(&a).unwrap();
        let gl = GlGroup::new(2, 3);
        for (g, h) in gl.elements.iter().zip(&gl.inverses).take(20) {
            let generic = a.change_basis(&small_to_linmap(g, 2, 3)).unwrap();
            assert_eq!(sa.transform(g, h).to_msc(), generic);
        }
    }

    #[test]
    fn index_roundtrip() {
        let m = SmallMsc::from_index(2, 3, 1234);
        assert_eq!(m.index(), 1234);
    }
}
