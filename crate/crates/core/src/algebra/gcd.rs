//! Multivariate polynomial gcd over the integers.
//!
//! Dense modular algorithm: images modulo word-sized primes are computed by
//! recursive evaluation/interpolation down to univariate Euclid, combined by CRT,
//! and the result is confirmed by exact trial division over Z.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, ToPrimitive, Zero};

use super::modular::{self, add_mod, inv_mod, mul_mod, sub_mod, SplitMix, UPoly};
use super::monomial::{Monomial, NVARS};
use super::poly::{IntPoly, Integer};

const FIELD_BITS: u32 = 16;
const FIELD_MASK: u64 = (1 << FIELD_BITS) - 1;

fn shift(i: usize) -> u32 {
    FIELD_BITS * (NVARS - 1 - i) as u32
}

fn field(key: u64, i: usize) -> usize {
    ((key >> shift(i)) & FIELD_MASK) as usize
}

fn divides_key(big: u64, small: u64) -> bool {
    (0..NVARS).all(|i| field(big, i) >= field(small, i))
}

/// Sparse polynomial over Z/pZ; exponents packed in recursion order (variable 0 in
/// the most significant field). Terms sorted by decreasing key, which is lex order.
#[derive(Clone, Debug, PartialEq)]
struct ModPoly {
    terms: Vec<(u64, u64)>,
}

impl ModPoly {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead_key(&self) -> u64 {
        self.terms[0].0
    }

    fn monic(mut self, p: u64) -> ModPoly {
        if let Some(&(_, lc)) = self.terms.first() {
            let inv = inv_mod(lc, p);
            for t in &mut self.terms {
                t.1 = mul_mod(t.1, inv, p);
            }
        }
        self
    }

    /// Runs of terms sharing all exponents except that of variable `v`, which must be
    /// the lowest-order active variable. Each run becomes a dense polynomial in `v`.
    fn groups(&self, v: usize) -> Vec<(u64, UPoly)> {
        let mask = !(FIELD_MASK << shift(v));
        let mut out: Vec<(u64, UPoly)> = Vec::new();
        for &(key, c) in &self.terms {
            let base = key & mask;
            let e = field(key, v);
            match out.last_mut() {
                Some((k, u)) if *k == base => {
                    if u.len() <= e {
                        u.resize(e + 1, 0);
                    }
                    u[e] = c;
                }
                _ => {
                    let mut u = vec![0; e + 1];
                    u[e] = c;
                    out.push((base, u));
                }
            }
        }
        out
    }

    fn from_groups(groups: &[(u64, UPoly)], v: usize) -> ModPoly {
        let mut terms = Vec::new();
        for (base, u) in groups {
            for (e, &c) in u.iter().enumerate().rev() {
                if c != 0 {
                    terms.push((base | ((e as u64) << shift(v)), c));
                }
            }
        }
        ModPoly { terms }
    }

    fn to_upoly(&self) -> UPoly {
        let mut u = vec![0; self.terms.first().map(|t| field(t.0, 0) + 1).unwrap_or(0)];
        for &(key, c) in &self.terms {
            u[field(key, 0)] = c;
        }
        u
    }

    fn from_upoly(u: &UPoly) -> ModPoly {
        ModPoly {
            terms: u
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, &c)| c != 0)
                .map(|(e, &c)| ((e as u64) << shift(0), c))
                .collect(),
        }
    }

    /// True when `d` divides `self` in Z/pZ[x].
    fn divisible_by(&self, d: &ModPoly, p: u64) -> bool {
        if d.is_zero() {
            return false;
        }
        let (dlead, dlc) = d.terms[0];
        let inv = inv_mod(dlc, p);
        let mut rem: BTreeMap<u64, u64> = self.terms.iter().copied().collect();
        while let Some((key, c)) = rem.pop_last() {
            if !divides_key(key, dlead) {
                return false;
            }
            let qk = key - dlead;
            let qc = mul_mod(c, inv, p);
            for &(tk, tc) in &d.terms[1..] {
                let k = qk + tk;
                let delta = mul_mod(qc, tc, p);
                let slot = rem.entry(k).or_insert(0);
                *slot = sub_mod(*slot, delta, p);
                if *slot == 0 {
                    rem.remove(&k);
                }
            }
        }
        true
    }
}

fn eval_groups(groups: &[(u64, UPoly)], alpha: u64, p: u64) -> ModPoly {
    ModPoly {
        terms: groups
            .iter()
            .map(|(k, u)| (*k, modular::eval(u, alpha, p)))
            .filter(|&(_, c)| c != 0)
            .collect(),
    }
}

fn exact_udiv(a: &UPoly, b: &UPoly, p: u64) -> UPoly {
    let (q, r) = modular::divrem(a, b, p);
    debug_assert!(r.is_empty());
    q
}

/// Monic gcd in Z/pZ[x_0, ..., x_{k-1}] (lex leading coefficient 1).
fn gcd_modp(a: &ModPoly, b: &ModPoly, k: usize, p: u64, rng: &mut SplitMix) -> ModPoly {
    if a.is_zero() {
        return b.clone().monic(p);
    }
    if b.is_zero() {
        return a.clone().monic(p);
    }
    if k == 1 {
        return ModPoly::from_upoly(&modular::gcd(&a.to_upoly(), &b.to_upoly(), p));
    }
    let v = k - 1;
    let mut ga = a.groups(v);
    let mut gb = b.groups(v);
    let content = |gs: &[(u64, UPoly)]| {
        gs.iter().fold(Vec::new(), |acc, (_, u)| modular::gcd(&acc, u, p))
    };
    let (ca, cb) = (content(&ga), content(&gb));
    for (_, u) in ga.iter_mut() {
        *u = exact_udiv(u, &ca, p);
    }
    for (_, u) in gb.iter_mut() {
        *u = exact_udiv(u, &cb, p);
    }
    let cont = modular::gcd(&ca, &cb, p);
    let (lca, lcb) = (ga[0].1.clone(), gb[0].1.clone());
    let g = modular::gcd(&lca, &lcb, p);
    let max_deg = |gs: &[(u64, UPoly)]| gs.iter().map(|(_, u)| u.len() - 1).max().unwrap_or(0);
    let bound = (g.len() - 1) + max_deg(&ga).min(max_deg(&gb));
    let (prim_a, prim_b) = (ModPoly::from_groups(&ga, v), ModPoly::from_groups(&gb, v));

    let finish = |h: &BTreeMap<u64, UPoly>| -> ModPoly {
        let hc = h.values().fold(Vec::new(), |acc, u| modular::gcd(&acc, u, p));
        let groups: Vec<(u64, UPoly)> = h
            .iter()
            .rev()
            .map(|(k, u)| (*k, modular::mul(&exact_udiv(u, &hc, p), &cont, p)))
            .collect();
        ModPoly::from_groups(&groups, v).monic(p)
    };

    let mut lead: Option<u64> = None;
    let mut h: BTreeMap<u64, UPoly> = BTreeMap::new();
    let mut modulus: UPoly = vec![1];
    let mut count = 0usize;
    loop {
        let alpha = rng.residue(p);
        if modular::eval(&lca, alpha, p) == 0 || modular::eval(&lcb, alpha, p) == 0 {
            continue;
        }
        let img = gcd_modp(&eval_groups(&ga, alpha, p), &eval_groups(&gb, alpha, p), k - 1, p, rng);
        let key = img.lead_key();
        if key == 0 {
            return ModPoly::from_groups(&[(0, cont)], v).monic(p);
        }
        let g_alpha = modular::eval(&g, alpha, p);
        let mut changed = true;
        match lead {
            Some(l) if key > l => continue,
            Some(l) if key == l => {
                let inv = inv_mod(modular::eval(&modulus, alpha, p), p);
                let img_map: BTreeMap<u64, u64> = img.terms.iter().copied().collect();
                let keys: Vec<u64> = h.keys().chain(img_map.keys()).copied().collect();
                changed = false;
                for k2 in keys {
                    let old = h.get(&k2).map(|u| modular::eval(u, alpha, p)).unwrap_or(0);
                    let new = mul_mod(g_alpha, *img_map.get(&k2).unwrap_or(&0), p);
                    let d = mul_mod(sub_mod(new, old, p), inv, p);
                    if d != 0 {
                        changed = true;
                        let entry = h.entry(k2).or_default();
                        *entry = modular::add(entry, &modular::scale(&modulus, d, p), p);
                        if entry.is_empty() {
                            h.remove(&k2);
                        }
                    }
                }
                modulus = modular::mul_linear(&modulus, alpha, p);
                count += 1;
            }
            _ => {
                lead = Some(key);
                h = img.terms.iter().map(|&(k2, c)| (k2, vec![mul_mod(c, g_alpha, p)])).collect();
                modulus = modular::mul_linear(&vec![1], alpha, p);
                count = 1;
            }
        }
        if count > bound {
            return finish(&h);
        }
        if !changed {
            let cand = finish(&h);
            if prim_a.divisible_by(&cand, p) && prim_b.divisible_by(&cand, p) {
                return cand;
            }
        }
    }
}

/// Variable layout for one modular gcd problem: `order[i]` is the engine variable
/// stored in packed field `i`.
struct Layout {
    order: Vec<usize>,
}

impl Layout {
    fn key(&self, m: Monomial) -> u64 {
        self.order
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &var)| acc | (u64::from(m.exp_at(var)) << shift(i)))
    }

    fn monomial(&self, key: u64) -> Monomial {
        let mut exps = [0u32; NVARS];
        for (i, &var) in self.order.iter().enumerate() {
            exps[var] = field(key, i) as u32;
        }
        Monomial::new(exps)
    }

    fn image(&self, terms: &[(u64, &Integer)], p: u64) -> ModPoly {
        let pb = BigInt::from(p);
        ModPoly {
            terms: terms
                .iter()
                .map(|&(k, c)| {
                    let r = match c.to_i64() {
                        Some(s) => s.rem_euclid(p as i64) as u64,
                        None => c.mod_floor(&pb).to_u64().unwrap(),
                    };
                    (k, r)
                })
                .filter(|&(_, r)| r != 0)
                .collect(),
        }
    }
}

/// Cheap coprimality certificate: if every univariate image (other variables fixed
/// at random residues, degrees preserved) has trivial gcd, the inputs are coprime.
fn certainly_coprime(a: &IntPoly, b: &IntPoly, rng: &mut SplitMix) -> bool {
    let p = modular::primes()[0];
    let (da, db) = (a.degrees(), b.degrees());
    let ident = Layout { order: (0..NVARS).collect() };
    let ia = ident.image(&keyed(a, &ident), p);
    let ib = ident.image(&keyed(b, &ident), p);
    for v in 0..NVARS {
        if da[v] == 0 || db[v] == 0 {
            continue;
        }
        let mut settled = false;
        for _ in 0..3 {
            let point: Vec<u64> = (0..NVARS).map(|_| rng.residue(p)).collect();
            let ua = univariate_image(&ia, v, &point, p);
            let ub = univariate_image(&ib, v, &point, p);
            if ua.len() != da[v] as usize + 1 || ub.len() != db[v] as usize + 1 {
                continue;
            }
            if modular::gcd(&ua, &ub, p).len() > 1 {
                return false;
            }
            settled = true;
            break;
        }
        if !settled {
            return false;
        }
    }
    true
}

fn univariate_image(poly: &ModPoly, v: usize, point: &[u64], p: u64) -> UPoly {
    let mut u: UPoly = Vec::new();
    for &(key, c) in &poly.terms {
        let mut val = c;
        for (i, &x) in point.iter().enumerate() {
            if i != v {
                let e = field(key, i) as u64;
                if e > 0 {
                    val = mul_mod(val, modular::pow_mod(x, e, p), p);
                }
            }
        }
        let e = field(key, v);
        if u.len() <= e {
            u.resize(e + 1, 0);
        }
        u[e] = add_mod(u[e], val, p);
    }
    modular::trim(&mut u);
    u
}

fn keyed<'a>(poly: &'a IntPoly, layout: &Layout) -> Vec<(u64, &'a Integer)> {
    let mut out: Vec<(u64, &Integer)> = poly.terms().iter().map(|(m, c)| (layout.key(*m), c)).collect();
    out.sort_unstable_by(|x, y| y.0.cmp(&x.0));
    out
}

fn symmetric(x: &BigInt, modulus: &BigInt, half: &BigInt) -> BigInt {
    if x > half {
        x - modulus
    } else {
        x.clone()
    }
}

/// Gcd of two primitive, nonconstant polynomials without monomial content.
/// Returns `(g, a/g, b/g)` with `g` primitive and positive leading coefficient.
fn gcd_primitive(a: &IntPoly, b: &IntPoly) -> (IntPoly, IntPoly, IntPoly) {
    if a == b {
        return (a.clone(), IntPoly::one(), IntPoly::one());
    }
    let mut rng = SplitMix::new(0x5eed_0f_9cd);
    if certainly_coprime(a, b, &mut rng) {
        return (IntPoly::one(), a.clone(), b.clone());
    }
    let (da, db) = (a.degrees(), b.degrees());
    let mut order: Vec<usize> = (0..NVARS).filter(|&i| da[i] > 0 || db[i] > 0).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(da[i].max(db[i])));
    let k = order.len();
    let layout = Layout { order };
    let (ka, kb) = (keyed(a, &layout), keyed(b, &layout));
    let (lca, lcb) = (ka[0].1.clone(), kb[0].1.clone());
    let gamma = lca.gcd(&lcb);

    let mut modulus = BigInt::one();
    let mut combined: BTreeMap<u64, BigInt> = BTreeMap::new();
    let mut lead: Option<u64> = None;
    let mut previous: Option<IntPoly> = None;
    for &p in modular::primes() {
        let pb = BigInt::from(p);
        if (&lca % &pb).is_zero() || (&lcb % &pb).is_zero() {
            continue;
        }
        let img = gcd_modp(&layout.image(&ka, p), &layout.image(&kb, p), k, p, &mut rng);
        let key = img.lead_key();
        if key == 0 {
            return (IntPoly::one(), a.clone(), b.clone());
        }
        let gamma_p = gamma.mod_floor(&pb).to_u64().unwrap();
        let img: BTreeMap<u64, u64> = img.terms.iter().map(|&(k2, c)| (k2, mul_mod(c, gamma_p, p))).collect();
        match lead {
            Some(l) if key > l => continue,
            Some(l) if key == l => {
                let m_p = modulus.mod_floor(&pb).to_u64().unwrap();
                let inv = inv_mod(m_p, p);
                let keys: Vec<u64> = combined.keys().chain(img.keys()).copied().collect();
                for k2 in keys {
                    let r1 = combined.get(&k2).cloned().unwrap_or_default();
                    let r2 = *img.get(&k2).unwrap_or(&0);
                    let r1p = r1.mod_floor(&pb).to_u64().unwrap();
                    let t = mul_mod(sub_mod(r2, r1p, p), inv, p);
                    let x = r1 + &modulus * BigInt::from(t);
                    if x.is_zero() {
                        combined.remove(&k2);
                    } else {
                        combined.insert(k2, x);
                    }
                }
                modulus *= &pb;
            }
            _ => {
                lead = Some(key);
                combined = img.into_iter().map(|(k2, c)| (k2, BigInt::from(c))).collect();
                modulus = pb.clone();
                previous = None;
            }
        }
        let half = &modulus >> 1u32;
        let cand = IntPoly::from_terms(
            combined
                .iter()
                .map(|(k2, x)| (layout.monomial(*k2), symmetric(x, &modulus, &half))),
        );
        let max_bits = cand.terms().iter().map(|(_, c)| c.bits()).max().unwrap_or(0);
        let worth_trying = previous.as_ref() == Some(&cand) || max_bits + 24 < modulus.bits();
        previous = Some(cand.clone());
        if !worth_trying {
            continue;
        }
        let (_, h) = cand.primitive_part();
        if let (Some(qa), Some(qb)) = (a.div_exact(&h), b.div_exact(&h)) {
            return (h, qa, qb);
        }
    }
    panic!("multivariate gcd: modular reconstruction did not converge");
}

/// Greatest common divisor with cofactors: returns `(g, a/g, b/g)`.
///
/// `g` is primitive over Z with positive graded-lex leading coefficient, so it is
/// the gcd over Q up to the scalar normalization; `gcd(p, 0)` is the primitive
/// part of `p`. Both inputs zero yields `(0, 0, 0)`.
pub fn gcd_cofactors(a: &IntPoly, b: &IntPoly) -> (IntPoly, IntPoly, IntPoly) {
    if a.is_zero() && b.is_zero() {
        return (IntPoly::zero(), IntPoly::zero(), IntPoly::zero());
    }
    if a.is_zero() {
        let (c, pb) = b.primitive_part();
        return (pb, IntPoly::zero(), IntPoly::constant(c));
    }
    if b.is_zero() {
        let (c, pa) = a.primitive_part();
        return (pa, IntPoly::constant(c), IntPoly::zero());
    }
    let (ca, pa) = a.primitive_part();
    let (cb, pb) = b.primitive_part();
    let (ma, mb) = (pa.monomial_content(), pb.monomial_content());
    let gm = ma.min(mb);
    let (ra, rb) = (pa.div_monomial(ma), pb.div_monomial(mb));
    let (core, qa, qb) = if ra.is_constant() || rb.is_constant() {
        (IntPoly::one(), ra, rb)
    } else {
        gcd_primitive(&ra, &rb)
    };
    let g = core.mul_monomial(gm);
    let cof_a = qa.mul_monomial(ma.div(gm).unwrap()).scale(&ca);
    let cof_b = qb.mul_monomial(mb.div(gm).unwrap()).scale(&cb);
    (g, cof_a, cof_b)
}

pub fn gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    gcd_cofactors(a, b).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Var;

    fn v(x: Var) -> IntPoly {
        IntPoly::var(x)
    }
    fn int(n: i64) -> IntPoly {
        IntPoly::constant(Integer::from(n))
    }

    fn check(a: &IntPoly, b: &IntPoly) -> IntPoly {
        let (g, qa, qb) = gcd_cofactors(a, b);
        assert_eq!(&g * &qa, *a);
        assert_eq!(&g * &qb, *b);
        // cofactors must be coprime
        let (g2, _, _) = gcd_cofactors(&qa, &qb);
        assert!(g2.is_constant(), "cofactors share {g2}");
        g
    }

    #[test]
    fn simple_univariate() {
        let t = v(Var::T);
        let a = int(1) - t.pow(2);
        let b = (int(1) - t.clone()).pow(2);
        let g = check(&a, &b);
        assert_eq!(g, t - int(1));
    }

    #[test]
    fn coprime_binomials() {
        let (q, b, t) = (v(Var::Q), v(Var::B), v(Var::T));
        let g = check(&(int(1) - &q * &t), &(int(1) - &b * &q));
        assert!(g.is_one());
    }

    #[test]
    fn shared_multivariate_factor() {
        let (q, a, b, t) = (v(Var::Q), v(Var::A), v(Var::B), v(Var::T));
        let common = (int(1) - &a * &q.pow(2)) * (&b - &a * &t * &q) * (int(1) - &q.pow(3));
        let x = &common * &(int(1) - &b * &q + int(3) * &t);
        let y = &common * &(int(2) - &a * &a * &t + q.pow(5));
        let g = check(&x, &y);
        assert_eq!(g.primitive_part().1, common.primitive_part().1);
    }

    #[test]
    fn monomial_and_integer_content() {
        let (q, a) = (v(Var::Q), v(Var::A));
        let x = int(6) * &q.pow(2) * &a * &(int(1) - &q);
        let y = int(4) * &q * &(int(1) - &q) * &(int(1) + &a);
        let g = check(&x, &y);
        assert_eq!(g, (&q * &(int(1) - &q)).primitive_part().1);
    }

    #[test]
    fn gcd_with_zero() {
        let p = int(2) * v(Var::A) - int(4);
        assert_eq!(gcd(&p, &IntPoly::zero()), v(Var::A) - int(2));
        assert_eq!(gcd(&p, &p), v(Var::A) - int(2));
    }

    #[test]
    fn large_coefficients_need_several_primes() {
        let big = Integer::from(3).pow(90u32);
        let (q, t) = (v(Var::Q), v(Var::T));
        let common = IntPoly::constant(big.clone()) * &q + int(1) + &t * &q;
        let x = &common * &(q.pow(2) + int(5));
        let y = &common * &(t.pow(2) - &q);
        let g = check(&x, &y);
        assert_eq!(g, common);
    }
}
