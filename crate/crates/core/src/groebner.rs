//! Buchberger's algorithm over a field context.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Monomial, MonomialOrder, Poly};

pub const DEFAULT_DEGREE_CAP: u32 = 24;

/// A reduced Gröbner basis.
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis<E> {
    pub order: MonomialOrder,
    pub nvars: usize,
    /// Monic, reduced, sorted by leading monomial (ascending).
    pub basis: Vec<Poly<E>>,
}

fn lead<E: Clone + PartialEq>(p: &Poly<E>, order: MonomialOrder) -> (Monomial, E) {
    let (m, c) = p.leading(order).expect("leading term of zero");
    (m.clone(), c.clone())
}

fn monic<F: Field>(f: &F, p: &Poly<F::Elem>, order: MonomialOrder) -> Poly<F::Elem> {
    let (_, c) = lead(p, order);
    p.scale(f, &f.inv(&c))
}

/// Fully reduced remainder of `p` modulo `basis`.
pub fn normal_form<F: Field>(f: &F, p: &Poly<F::Elem>, basis: &[Poly<F::Elem>], order: MonomialOrder) -> Poly<F::Elem> {
    let leads: Vec<(Monomial, F::Elem)> = basis.iter().map(|g| lead(g, order)).collect();
    let mut rest = p.clone();
    let mut rem = Poly::zero(p.nvars());
    while let Some((m, c)) = rest.leading(order).map(|(m, c)| (m.clone(), c.clone())) {
        match leads.iter().position(|(lm, _)| lm.divides(&m)) {
            Some(k) => {
                let q = leads[k].0.quotient(&m);
                let coef = f.div(&c, &leads[k].1);
                rest = rest.sub(f, &basis[k].mul_term(f, &q, &coef));
            }
            None => {
                rem.add_term(f, m.clone(), &c);
                rest.add_term(f, m, &f.neg(&c));
            }
        }
    }
    rem
}

fn s_poly<F: Field>(f: &F, a: &Poly<F::Elem>, b: &Poly<F::Elem>, order: MonomialOrder) -> Poly<F::Elem> {
    let (ma, ca) = lead(a, order);
    let (mb, cb) = lead(b, order);
    let l = ma.lcm(&mb);
    let ta = a.mul_term(f, &ma.quotient(&l), &f.inv(&ca));
    let tb = b.mul_term(f, &mb.quotient(&l), &f.inv(&cb));
    ta.sub(f, &tb)
}

/// Reduced Gröbner basis of the ideal generated by `gens`. S-pairs whose
/// lcm exceeds `degree_cap` abort with `DegreeCapExceeded`.
pub fn groebner<F: Field>(f: &F, nvars: usize, gens: &[Poly<F::Elem>], order: MonomialOrder, degree_cap: u32) -> Result<GroebnerBasis<F::Elem>> {
    let mut basis: Vec<Poly<F::Elem>> = Vec::new();
    for g in gens {
        if g.degree() > degree_cap {
            return Err(Error::DegreeCapExceeded(degree_cap));
        }
        let r = normal_form(f, g, &basis, order);
        if !r.is_zero() {
            basis.push(monic(f, &r, order));
        }
    }
    let mut pairs: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let push_pairs = |basis: &Vec<Poly<F::Elem>>, pairs: &mut BTreeSet<(u32, usize, usize)>, j: usize| {
        for i in 0..j {
            pairs.insert((lead(&basis[i], order).0.lcm(&lead(&basis[j], order).0).degree(), i, j));
        }
    };
    for j in 0..basis.len() {
        push_pairs(&basis, &mut pairs, j);
    }
    while let Some(&(deg, i, j)) = pairs.iter().next() {
        pairs.remove(&(deg, i, j));
        let (mi, _) = lead(&basis[i], order);
        let (mj, _) = lead(&basis[j], order);
        if mi.coprime(&mj) {
            continue;
        }
        if deg > degree_cap {
            return Err(Error::DegreeCapExceeded(degree_cap));
        }
        let s = s_poly(f, &basis[i], &basis[j], order);
        let r = normal_form(f, &s, &basis, order);
        if !r.is_zero() {
            basis.push(monic(f, &r, order));
            push_pairs(&basis, &mut pairs, basis.len() - 1);
        }
    }
    Ok(GroebnerBasis { order, nvars, basis: reduce(f, basis, order) })
}

fn reduce<F: Field>(f: &F, basis: Vec<Poly<F::Elem>>, order: MonomialOrder) -> Vec<Poly<F::Elem>> {
    // drop elements whose leading monomial is divisible by another's
    let leads: Vec<Monomial> = basis.iter().map(|g| lead(g, order).0).collect();
    let mut keep: Vec<usize> = Vec::new();
    for i in 0..basis.len() {
        let redundant = (0..basis.len()).any(|j| {
            j != i && leads[j].divides(&leads[i]) && (leads[j] != leads[i] || j < i)
        });
        if !redundant {
            keep.push(i);
        }
    }
    let minimal: Vec<Poly<F::Elem>> = keep.iter().map(|&i| basis[i].clone()).collect();
    let mut out: Vec<Poly<F::Elem>> = Vec::new();
    for (i, g) in minimal.iter().enumerate() {
        let others: Vec<Poly<F::Elem>> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, h)| h.clone()).collect();
        let (m, c) = lead(g, order);
        let tail = g.sub(f, &Poly::from_terms(f, g.nvars(), [(m.clone(), c.clone())]));
        let tail = normal_form(f, &tail, &others, order);
        let mut r = tail;
        r.add_term(f, m, &c);
        out.push(monic(f, &r, order));
    }
    out.sort_by(|a, b| order.cmp(&lead(a, order).0, &lead(b, order).0));
    out
}

impl<E: Clone + PartialEq> GroebnerBasis<E> {
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().map(|g| lead(g, self.order).0).collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.leading_monomials().iter().any(Monomial::is_one)
    }

    /// Krull dimension of the quotient: the largest set of variables with
    /// no leading monomial supported inside it. `None` for the unit ideal.
    pub fn dimension(&self) -> Option<usize> {
        if self.is_unit_ideal() {
            return None;
        }
        let leads = self.leading_monomials();
        let n = self.nvars;
        let best = (0u32..1 << n)
            .filter(|set| leads.iter().all(|m| m.0.iter().enumerate().any(|(i, &e)| e > 0 && set & (1 << i) == 0)))
            .map(u32::count_ones)
            .max()
            .unwrap_or(0);
        Some(best as usize)
    }

    /// Standard monomials in ascending order, or `None` if there are
    /// infinitely many.
    pub fn staircase(&self) -> Option<Vec<Monomial>> {
        let leads = self.leading_monomials();
        let mut bounds = vec![0u32; self.nvars];
        for (i, b) in bounds.iter_mut().enumerate() {
            *b = leads.iter().filter(|m| m.pure_power() == Some(i) || m.is_one()).map(|m| m.0[i].max(1)).min()?;
            if leads.iter().any(Monomial::is_one) {
                *b = 0;
            }
        }
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.nvars];
        loop {
            let m = Monomial(cur.clone());
            if cur.iter().zip(&bounds).all(|(e, b)| e < b) && !leads.iter().any(|l| l.divides(&m)) {
                out.push(m);
            }
            // odometer over the box
            let mut k = 0;
            loop {
                if k == self.nvars {
                    out.sort_by(|a, b| self.order.cmp(a, b));
                    return Some(out);
                }
                cur[k] += 1;
                if cur[k] < bounds[k].max(1) {
                    break;
                }
                cur[k] = 0;
                k += 1;
            }
        }
    }

    pub fn reduce<F: Field<Elem = E>>(&self, f: &F, p: &Poly<E>) -> Poly<E> {
        normal_form(f, p, &self.basis, self.order)
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, p: &Poly<E>) -> bool {
        self.reduce(f, p).is_zero()
    }

    /// Every S-polynomial of the basis reduces to zero.
    pub fn verify<F: Field<Elem = E>>(&self, f: &F) -> bool {
        for i in 0..self.basis.len() {
            for j in i + 1..self.basis.len() {
                if !self.reduce(f, &s_poly(f, &self.basis[i], &self.basis[j], self.order)).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Exact quotient `p / h`, if `h` divides `p`.
pub fn divide_exact<F: Field>(f: &F, p: &Poly<F::Elem>, h: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
    let order = MonomialOrder::Grevlex;
    let (mh, ch) = lead(h, order);
    let mut rest = p.clone();
    let mut q = Poly::zero(p.nvars());
    while let Some((m, c)) = rest.leading(order).map(|(m, c)| (m.clone(), c.clone())) {
        if !mh.divides(&m) {
            return None;
        }
        let t = mh.quotient(&m);
        let coef = f.div(&c, &ch);
        q.add_term(f, t.clone(), &coef);
        rest = rest.sub(f, &h.mul_term(f, &t, &coef));
    }
    Some(q)
}

/// Decides `(I : h) = I`, i.e. `h` is a nonzerodivisor modulo `I`.
pub fn colon_is_trivial<F: Field>(f: &F, nvars: usize, gens: &[Poly<F::Elem>], h: &Poly<F::Elem>, degree_cap: u32) -> Result<bool> {
    if h.is_zero() {
        return Ok(false);
    }
    let gi = groebner(f, nvars, gens, MonomialOrder::Grevlex, degree_cap)?;
    if gi.is_unit_ideal() {
        return Ok(true);
    }
    // I ∩ (h) from t I + (1 - t) h, eliminating t
    let t = Poly::var(f, nvars + 1, 0);
    let one_minus_t = Poly::constant(f, nvars + 1, f.one()).sub(f, &t);
    let mut elim: Vec<Poly<F::Elem>> = gi.basis.iter().map(|g| g.shift_vars(1).mul(f, &t)).collect();
    elim.push(h.shift_vars(1).mul(f, &one_minus_t));
    let ge = groebner(f, nvars + 1, &elim, MonomialOrder::Block(1), degree_cap)?;
    for g in ge.basis.iter().filter(|g| !g.involves(0)) {
        let g = g.remove_var(0);
        let Some(q) = divide_exact(f, &g, h) else {
            return Err(Error::InternalInconsistency("intersection element not divisible".into()));
        };
        if !gi.contains(f, &q) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::poly::QPoly;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn polys(src: &[&str], v: &[String]) -> Vec<QPoly> {
        src.iter().map(|s| QPoly::parse(s, v).unwrap()).collect()
    }

    fn mod_p(p: u64, ps: &[QPoly]) -> Vec<Poly<u64>> {
        let f = PrimeField::new(p);
        ps.iter().map(|q| q.map(&f, |c| f.from_scalar(c))).collect()
    }

    /// Standard monomials up to degree `d` by linear algebra on the span of
    /// `m * g` for all generators and monomials of bounded degree.
    fn brute_staircase<F: Field>(f: &F, n: usize, gens: &[Poly<F::Elem>], d: u32) -> Vec<Monomial> {
        use crate::matrix::Matrix;
        let mut monos: Vec<Monomial> = Vec::new();
        let mut stack = vec![Monomial::one(n)];
        while let Some(m) = stack.pop() {
            if m.degree() > d + 2 || monos.contains(&m) {
                continue;
            }
            for i in 0..n {
                let mut e = m.0.clone();
                e[i] += 1;
                stack.push(Monomial(e));
            }
            monos.push(m);
        }
        let order = MonomialOrder::Grevlex;
        monos.sort_by(|a, b| order.cmp(b, a));
        let mut rows = Vec::new();
        for g in gens {
            for m in &monos {
                let t = g.mul_term(f, m, &f.one());
                if t.degree() <= d + 2 {
                    rows.push(monos.iter().map(|x| t.coeff(f, x)).collect::<Vec<_>>());
                }
            }
        }
        let mut mat = Matrix::from_rows(rows);
        let pivots = crate::field::rref(f, &mut mat);
        let mut out: Vec<Monomial> = (0..monos.len()).filter(|c| !pivots.contains(c)).map(|c| monos[c].clone()).filter(|m| m.degree() <= d).collect();
        out.sort_by(|a, b| order.cmp(a, b));
        out
    }

    #[test]
    fn fiber_product_staircase() {
        let v = names(&["x", "y"]);
        let rel = polys(&["x^2 - 2*x", "y^2 - 2*y", "x*y"], &v);
        let ge = groebner(&Rationals, 2, &rel, MonomialOrder::Grevlex, DEFAULT_DEGREE_CAP).unwrap();
        let expected = vec![Monomial(vec![0, 0]), Monomial(vec![0, 1]), Monomial(vec![1, 0])];
        assert_eq!(ge.staircase().unwrap(), expected);
        assert!(ge.verify(&Rationals));
        let f2 = PrimeField::new(2);
        let gp = groebner(&f2, 2, &mod_p(2, &rel), MonomialOrder::Grevlex, DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(ge.dimension(), Some(0));
        assert_eq!(gp.staircase().unwrap(), expected);
        assert_eq!(brute_staircase(&f2, 2, &mod_p(2, &rel), 3), expected);
    }

    #[test]
    fn krull_dimension() {
        let v = names(&["x", "y", "z"]);
        let dim = |rels: &[&str]| groebner(&Rationals, 3, &polys(rels, &v), MonomialOrder::Grevlex, 24).unwrap().dimension();
        assert_eq!(dim(&[]), Some(3));
        assert_eq!(dim(&["x*y"]), Some(2));
        assert_eq!(dim(&["x*y", "z^2"]), Some(1));
        assert_eq!(dim(&["x^2 + y^2 + z^2"]), Some(2));
        assert_eq!(dim(&["x - 1", "x"]), None);
    }

    #[test]
    fn one_variable() {
        let v = names(&["x"]);
        let g = groebner(&Rationals, 1, &polys(&["x^2"], &v), MonomialOrder::Grevlex, 24).unwrap();
        assert_eq!(g.staircase().unwrap(), vec![Monomial(vec![0]), Monomial(vec![1])]);
        let g = groebner(&Rationals, 1, &[], MonomialOrder::Grevlex, 24).unwrap();
        assert_eq!(g.staircase(), None);
    }

    #[test]
    fn random_ideals_match_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let f = PrimeField::new(3);
        let v = names(&["x", "y"]);
        for _ in 0..20 {
            let mut gens = Vec::new();
            for _ in 0..3 {
                let mut p = Poly::zero(2);
                for _ in 0..3 {
                    let m = Monomial(vec![rng.gen_range(0..3), rng.gen_range(0..3)]);
                    if !m.is_one() {
                        p.add_term(&f, m, &rng.gen_range(1..3));
                    }
                }
                gens.push(p);
            }
            gens.push(Poly::var(&f, 2, 0).pow(&f, 3));
            gens.push(Poly::var(&f, 2, 1).pow(&f, 3));
            let g = groebner(&f, 2, &gens, MonomialOrder::Grevlex, 24).unwrap();
            assert!(g.verify(&f));
            assert_eq!(g.staircase().unwrap(), brute_staircase(&f, 2, &gens, 6), "{:?}", v);
        }
    }

    #[test]
    fn degree_cap_enforced() {
        let v = names(&["x", "y"]);
        let rel = polys(&["x^3 - y^2", "x*y^2 - x"], &v);
        assert!(matches!(groebner(&Rationals, 2, &rel, MonomialOrder::Grevlex, 2), Err(Error::DegreeCapExceeded(2))));
    }

    #[test]
    fn colon_checks() {
        let v = names(&["x", "y"]);
        let rel = polys(&["x^2 - 8*x"], &v);
        let y = QPoly::parse("y", &v).unwrap();
        let x = QPoly::parse("x", &v).unwrap();
        assert!(colon_is_trivial(&Rationals, 2, &rel, &y, 24).unwrap());
        assert!(!colon_is_trivial(&Rationals, 2, &rel, &x, 24).unwrap());
        let f2 = PrimeField::new(2);
        let yp = y.map(&f2, |c| f2.from_scalar(c));
        assert!(colon_is_trivial(&f2, 2, &mod_p(2, &rel), &yp, 24).unwrap());
        let q = divide_exact(&Rationals, &QPoly::parse("x^2*y - x*y", &v).unwrap(), &x).unwrap();
        assert_eq!(q, QPoly::parse("x*y - y", &v).unwrap());
    }
}
