//! Brute-force recomputation of the codimension-zero invariants. Uses its own
//! dense elimination over `Q` and `F_p`, naive mod-`p` saturation and lengths
//! from minors; nothing here goes through the Smith form or lattice code.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::{FinAlgebra, FinModule};
use crate::congruence::Certificate;
use crate::error::{Error, Result};
use crate::scalar::pow_mod;
use crate::LocalScalar as Q;

/// The invariant fields of a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub mu: usize,
    pub free_at_point: bool,
    pub length_cotangent_tors: u64,
    pub length_psi: u64,
    pub delta: i64,
    pub delta_ring: i64,
    pub kappa_coker_length: u64,
    pub ci_flag: bool,
    pub split_flag: bool,
}

impl From<&Certificate> for Invariants {
    fn from(c: &Certificate) -> Self {
        Invariants {
            mu: c.mu,
            free_at_point: c.free_at_point,
            length_cotangent_tors: c.length_cotangent_tors,
            length_psi: c.length_psi,
            delta: c.delta,
            delta_ring: c.delta_ring,
            kappa_coker_length: c.kappa_coker_length,
            ci_flag: c.ci_flag,
            split_flag: c.split_flag,
        }
    }
}

type Col = Vec<Q>;

fn val_int(p: &BigInt, n: &BigInt) -> i64 {
    let mut n = n.clone();
    let mut v = 0;
    while (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    v
}

fn val(p: &BigInt, x: &Q) -> Option<i64> {
    (!x.is_zero()).then(|| val_int(p, x.numer()) - val_int(p, x.denom()))
}

fn rank(cols: &[Col], n: usize) -> usize {
    let mut rows: Vec<Vec<Q>> = (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    let mut r = 0;
    for c in 0..cols.len() {
        let Some(piv) = (r..n).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, piv);
        for i in r + 1..n {
            if !rows[i][c].is_zero() {
                let f = &rows[i][c] / &rows[r][c];
                for k in c..cols.len() {
                    let t = &f * &rows[r][k];
                    rows[i][k] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

/// Basis over `Q` of `{x : rows x = 0}`.
fn nullspace(rows: &[Vec<Q>], ncols: usize) -> Vec<Col> {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, piv);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..ncols {
                    let t = &f * &m[r][k];
                    m[i][k] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Q::zero(); ncols];
            v[free] = Q::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[i][free].clone();
            }
            v
        })
        .collect()
}

/// Residue of an element of `O` in `F_p`.
fn residue(p: u64, x: &Q) -> u64 {
    let pb = BigInt::from(p);
    let n = x.numer().mod_floor(&pb);
    let d = x.denom().mod_floor(&pb);
    let (n, d): (u64, u64) = (n.try_into().unwrap(), d.try_into().unwrap());
    n * pow_mod(d, p - 2, p) % p
}

/// A nonzero `c` in `F_p^k` with `M c = 0` mod `p`, if any.
fn fp_kernel_vector(p: u64, cols: &[Col], n: usize) -> Option<Vec<u64>> {
    let k = cols.len();
    let mut m: Vec<Vec<u64>> = (0..n).map(|i| cols.iter().map(|c| residue(p, &c[i])).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(piv) = (r..n).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let inv = pow_mod(m[r][c], p - 2, p);
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..n {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..k {
                    m[i][j] = (m[i][j] + p * p - f * m[r][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free = (0..k).find(|c| !pivots.contains(c))?;
    let mut v = vec![0; k];
    v[free] = 1;
    for (i, &pc) in pivots.iter().enumerate() {
        v[pc] = (p - m[i][free]) % p;
    }
    Some(v)
}

/// `O`-basis of the span: column echelon with pivots of least valuation.
fn integral_basis(p: &BigInt, gens: &[Col], n: usize) -> Vec<Col> {
    let mut rest: Vec<Col> = gens.iter().filter(|c| c.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut basis = Vec::new();
    for i in 0..n {
        let best = (0..rest.len()).filter_map(|j| val(p, &rest[j][i]).map(|v| (v, j))).min();
        let Some((_, j)) = best else { continue };
        let piv = rest.swap_remove(j);
        for c in rest.iter_mut() {
            if !c[i].is_zero() {
                let f = &c[i] / &piv[i];
                for k in 0..n {
                    let t = &f * &piv[k];
                    c[k] -= t;
                }
            }
        }
        basis.push(piv);
    }
    basis
}

/// `(V ⊗ Q) ∩ O^n` for an `O`-independent integral family.
fn saturate(p: u64, mut basis: Vec<Col>, n: usize) -> Vec<Col> {
    let pq = Q::from_integer(p.into());
    while let Some(c) = fp_kernel_vector(p, &basis, n) {
        let j = c.iter().position(|&x| x != 0).unwrap();
        let mut v = vec![Q::zero(); n];
        for (b, &ci) in basis.iter().zip(&c) {
            let ci = Q::from_integer(ci.into());
            for k in 0..n {
                v[k] += &ci * &b[k];
            }
        }
        basis[j] = v.into_iter().map(|x| x / &pq).collect();
    }
    basis
}

/// Scales a rational vector into `O^n` by a power of `p`.
fn make_integral(p: &BigInt, v: Col) -> Col {
    let worst = v.iter().filter_map(|x| val(p, x)).min().unwrap_or(0);
    if worst >= 0 {
        return v;
    }
    let s = Q::from_integer(p.pow((-worst) as u32));
    v.into_iter().map(|x| x * &s).collect()
}

fn saturated_kernel(p: u64, rows: &[Vec<Q>], n: usize) -> Vec<Col> {
    let pb = BigInt::from(p);
    let basis: Vec<Col> = nullspace(rows, n).into_iter().map(|v| make_integral(&pb, v)).collect();
    saturate(p, basis, n)
}

fn det(mut m: Vec<Vec<Q>>) -> Q {
    let n = m.len();
    let mut d = Q::one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| !m[i][c].is_zero()) else { return Q::zero() };
        if piv != c {
            m.swap(piv, c);
            d = -d;
        }
        d *= &m[c][c];
        for i in c + 1..n {
            let f = &m[i][c] / &m[c][c];
            for k in c..n {
                let t = &f * &m[c][k];
                m[i][k] -= t;
            }
        }
    }
    d
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// `length(sat(L) / L)`: least valuation of a maximal minor of a basis.
fn saturation_index(p: u64, gens: &[Col], n: usize) -> u64 {
    let pb = BigInt::from(p);
    let b = integral_basis(&pb, gens, n);
    let r = b.len();
    subsets(n, r)
        .into_iter()
        .filter_map(|rows| val(&pb, &det(rows.iter().map(|&i| b.iter().map(|c| c[i].clone()).collect()).collect())))
        .min()
        .map_or(0, |v| v as u64)
}

struct Data {
    p: u64,
    d: usize,
    mult: Vec<Vec<Vec<Q>>>,
}

impl Data {
    /// Rows of the action of `x` on `A`.
    fn act_a(&self, x: &[Q]) -> Vec<Vec<Q>> {
        let mut out = vec![vec![Q::zero(); self.d]; self.d];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (r, row) in self.mult[i].iter().enumerate() {
                for (c, y) in row.iter().enumerate() {
                    out[r][c] += xi * y;
                }
            }
        }
        out
    }

    fn mul(&self, x: &[Q], y: &[Q]) -> Col {
        self.act_a(x).iter().map(|row| row.iter().zip(y).fold(Q::zero(), |s, (a, b)| s + a * b)).collect()
    }
}

fn act_m(acts: &[Vec<Vec<Q>>], g: usize, x: &[Q]) -> Vec<Vec<Q>> {
    let mut out = vec![vec![Q::zero(); g]; g];
    for (i, xi) in x.iter().enumerate() {
        for r in 0..g {
            for c in 0..g {
                out[r][c] += xi * &acts[i][r][c];
            }
        }
    }
    out
}

fn apply(m: &[Vec<Q>], v: &[Q]) -> Col {
    m.iter().map(|row| row.iter().zip(v).fold(Q::zero(), |s, (a, b)| s + a * b)).collect()
}

/// `{m : x m = 0 for x in xs}`, saturated.
fn annihilated(p: u64, acts: &[Vec<Vec<Q>>], g: usize, xs: &[Col]) -> Vec<Col> {
    let rows: Vec<Vec<Q>> = xs.iter().flat_map(|x| act_m(acts, g, x)).collect();
    saturated_kernel(p, &rows, g)
}

fn psi_length(p: u64, acts: &[Vec<Vec<Q>>], g: usize, prime: &[Col], ann_ring: &[Col]) -> Result<(u64, usize)> {
    let mp = annihilated(p, acts, g, prime);
    let mi = annihilated(p, acts, g, ann_ring);
    let both: Vec<Col> = mp.iter().chain(&mi).cloned().collect();
    if rank(&both, g) != g {
        return Err(Error::NonFiniteCongruenceModule);
    }
    Ok((saturation_index(p, &both, g), mp.len()))
}

/// Recomputes the invariants of `M` over `A` at the point with the given
/// basis values. `M` must be `O`-free.
pub fn oracle_invariants(a: &FinAlgebra, m: &FinModule, values: &[Q]) -> Result<Invariants> {
    let p = a.dvr().p();
    let d = a.rank();
    let g = m.rank();
    if m.relations().cols() > 0 {
        return Err(Error::Validation("oracle needs an O-free module".into()));
    }
    if g == 0 {
        return Err(Error::ZeroModule);
    }
    let data = Data {
        p,
        d,
        mult: (0..d).map(|i| (0..d).map(|r| a.basis_action(i).row(r).to_vec()).collect()).collect(),
    };
    let m_acts: Vec<Vec<Vec<Q>>> = m.actions().iter().map(|x| (0..g).map(|r| x.row(r).to_vec()).collect()).collect();
    let a_acts = data.mult.clone();

    let prime = saturated_kernel(data.p, &[values.to_vec()], d);
    let squares: Vec<Col> = prime.iter().flat_map(|x| prime.iter().map(|y| data.mul(x, y))).collect();
    if rank(&squares, d) != prime.len() {
        return Err(Error::NotRegularPoint);
    }
    let cot = saturation_index(p, &squares, d);
    let ann_ring = annihilated(p, &a_acts, d, &prime);
    let (psi, mu) = psi_length(p, &m_acts, g, &prime, &ann_ring)?;
    if mu == 0 {
        return Err(Error::NotSupported);
    }
    let (psi_ring, _) = psi_length(p, &a_acts, d, &prime, &ann_ring)?;
    let image: Vec<Col> = ann_ring
        .iter()
        .flat_map(|x| {
            let act = act_m(&m_acts, g, x);
            (0..g).map(move |j| apply(&act, &(0..g).map(|k| if k == j { Q::one() } else { Q::zero() }).collect::<Vec<_>>()))
        })
        .collect();
    let kappa = saturation_index(p, &image, g);
    let delta = mu as i64 * cot as i64 - psi as i64;
    let delta_ring = cot as i64 - psi_ring as i64;
    Ok(Invariants {
        mu,
        free_at_point: true,
        length_cotangent_tors: cot,
        length_psi: psi,
        delta,
        delta_ring,
        kappa_coker_length: kappa,
        ci_flag: delta_ring == 0,
        split_flag: delta == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{fiber3, hyper};

    fn ints(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| Q::from_integer(x.into())).collect()
    }

    #[test]
    fn saturation_by_hand() {
        // span{(2, 4)} has saturation span{(1, 2)}: index 1
        assert_eq!(saturation_index(2, &[ints(&[2, 4])], 2), 1);
        assert_eq!(saturation_index(3, &[ints(&[9, 0]), ints(&[0, 3])], 2), 3);
        assert_eq!(saturation_index(3, &[ints(&[1, 1]), ints(&[1, -2])], 2), 1);
        let s = saturate(2, vec![ints(&[2, 2]), ints(&[0, 4])], 2);
        assert_eq!(saturation_index(2, &s, 2), 0);
    }

    #[test]
    fn hypersurface_and_fiber_product() {
        let a = hyper(2, 8);
        let inv = oracle_invariants(&a, &FinModule::regular(&a), &ints(&[1, 0])).unwrap();
        assert_eq!((inv.length_psi, inv.length_cotangent_tors, inv.delta, inv.ci_flag), (3, 3, 0, true));
        let a = fiber3(2);
        let inv = oracle_invariants(&a, &FinModule::regular(&a), &ints(&[1, 0, 0])).unwrap();
        assert_eq!((inv.length_psi, inv.length_cotangent_tors, inv.delta, inv.ci_flag), (1, 2, 1, false));
        let inv2 = oracle_invariants(&a, &FinModule::free(&a, 2), &ints(&[1, 0, 0])).unwrap();
        assert_eq!((inv2.mu, inv2.delta, inv2.kappa_coker_length), (2, 2, 0));
    }

    #[test]
    fn singular_point_rejected() {
        // O[x]/(x^2) at x = 0
        let a = hyper(3, 0);
        assert_eq!(oracle_invariants(&a, &FinModule::regular(&a), &ints(&[1, 0])), Err(Error::NotRegularPoint));
    }
}
