//! Exact root extraction inside the scalar tower.
//!
//! `cyclo_roots` finds every root in Q(zeta_n) of a polynomial with
//! coefficients in Q(zeta_n). The polynomial is cleared to algebraic-integer
//! coefficients and reduced modulo a rational prime p = 1 (mod n), where the
//! cyclotomic polynomial splits. Roots are found in F_p by enumeration, lifted
//! p-adically by Newton iteration, recombined across the phi(n) conjugate
//! reductions through the root-of-unity Vandermonde system, and finally
//! verified by exact evaluation, so no false root can ever be reported.
//!
//! `ratfunc_roots` finds every root in k(t): such roots of a monic polynomial
//! over k[t] are themselves polynomials in t, so they are obtained from roots
//! of a squarefree specialization at t = c by t-adic Newton lifting to a
//! degree bound, then verified exactly.

use super::cyclo::{euler_phi, Cyclo};
use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::series::Series;
use num::{BigInt, BigRational, Integer, One, ToPrimitive, Zero};

/// All roots of `poly` (coefficient list, low degree first, not all zero)
/// that lie in Q(zeta_n). Deterministic order.
pub fn cyclo_roots(poly: &[Cyclo], order: u32) -> Vec<Cyclo> {
    let deg = match poly.iter().rposition(|c| !c.is_zero()) {
        Some(d) => d,
        None => panic!("root extraction on the zero polynomial"),
    };
    if deg == 0 {
        return vec![];
    }
    // Squarefree part, so every modular root is simple and liftable.
    let p = CPoly(poly[..=deg].to_vec());
    let sf = p.squarefree_part();
    let roots = cyclo_roots_squarefree(&sf.0, order);
    let mut out: Vec<Cyclo> = roots
        .into_iter()
        .filter(|r| p.eval(r).is_zero())
        .collect();
    out.sort_by(|a, b| a.cmp_key(b));
    out.dedup();
    out
}

/// Polynomial helper over the cyclotomic field.
struct CPoly(Vec<Cyclo>);

impl CPoly {
    fn degree(&self) -> usize {
        self.0.len() - 1
    }

    fn eval(&self, x: &Cyclo) -> Cyclo {
        let mut acc = Cyclo::zero();
        for c in self.0.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    fn derivative(&self) -> CPoly {
        CPoly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul(&Cyclo::from_int(i as i64)))
                .collect(),
        )
    }

    fn div_rem(&self, den: &CPoly) -> (CPoly, CPoly) {
        let dd = den.degree();
        let lead_inv = den.0[dd].inv().unwrap();
        let mut rem = self.0.clone();
        let steps = rem.len().saturating_sub(dd);
        let mut quot = vec![Cyclo::zero(); steps.max(1)];
        for k in (0..steps).rev() {
            let c = rem[k + dd].mul(&lead_inv);
            if !c.is_zero() {
                for i in 0..=dd {
                    rem[i + k] = rem[i + k].sub(&c.mul(&den.0[i]));
                }
                quot[k] = c;
            }
        }
        rem.truncate(dd.max(1));
        (CPoly(quot), CPoly(rem))
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(Cyclo::is_zero)
    }

    fn squarefree_part(&self) -> CPoly {
        let der = self.derivative();
        if der.is_zero() {
            return CPoly(self.0.clone());
        }
        let g = gcd(CPoly(self.0.clone()), der);
        if g.degree() == 0 {
            return CPoly(self.0.clone());
        }
        let (q, _) = self.div_rem(&g);
        q
    }
}

fn gcd(mut a: CPoly, mut b: CPoly) -> CPoly {
    loop {
        if b.is_zero() {
            return a;
        }
        let (_, r) = a.div_rem(&b);
        a = b;
        b = if r.is_zero() {
            CPoly(vec![Cyclo::zero()])
        } else {
            let d = r.0.iter().rposition(|c| !c.is_zero()).unwrap();
            CPoly(r.0[..=d].to_vec())
        };
        if b.0.len() == 1 && b.0[0].is_zero() {
            return a;
        }
    }
}

fn cyclo_roots_squarefree(poly: &[Cyclo], order: u32) -> Vec<Cyclo> {
    let phi = euler_phi(order) as usize;
    let deg = poly.len() - 1;

    // Clear denominators and make monic: substituting y = lc * x in
    // lc^(deg-1) * m(y / lc) yields a monic polynomial with integral
    // coefficients whose roots are lc * (roots of m).
    let mut den_lcm = BigInt::one();
    for c in poly {
        for q in c.coords_in(order) {
            den_lcm = den_lcm.lcm(q.denom());
        }
    }
    let cleared: Vec<Cyclo> = poly
        .iter()
        .map(|c| c.mul(&Cyclo::rational(BigRational::from_integer(den_lcm.clone()))))
        .collect();
    let lc = cleared[deg].clone();
    let mut monic: Vec<Cyclo> = Vec::with_capacity(deg + 1);
    // coefficient of y^i is a_i * lc^(deg-1-i); for i = deg it is 1
    for (i, a) in cleared.iter().enumerate() {
        if i == deg {
            monic.push(Cyclo::one());
        } else {
            monic.push(a.mul(&lc.pow((deg - 1 - i) as u32)));
        }
    }
    // Denominators may survive the monic transform only if lc had them; they
    // were cleared above, so coordinates are integers now.

    // Height bound on the coordinates of any root of the monic transform:
    // every conjugate of a root is bounded by 1 + max |coeff| (Cauchy bound,
    // with all conjugates of a coefficient bounded by its coordinate height),
    // and extracting coordinates from conjugate values multiplies by at most
    // the infinity norm of the inverse root-of-unity Vandermonde, crudely
    // bounded by n^phi. A final exact verification makes overshoot harmless.
    let mut height = BigRational::one();
    for c in &monic {
        let h = c.height();
        if h > height {
            height = h;
        }
    }
    let bound = (height + BigRational::one())
        * BigRational::from_integer(BigInt::from(order).pow(phi as u32) * BigInt::from(4));

    let (p, omegas) = choose_prime(&monic, order);
    let fp = Fp { p };

    // Precision: p^b > 2 * bound.
    let mut pb = BigInt::from(p);
    let two_bound = BigRational::from_integer(BigInt::from(2)) * &bound;
    while BigRational::from_integer(pb.clone()) <= two_bound {
        pb *= BigInt::from(p);
    }

    // Lift each omega to a root of the cyclotomic polynomial mod p^b.
    let cyclo_int: Vec<BigInt> = cyclotomic_int_coeffs(order);
    let omegas_lifted: Vec<BigInt> = omegas
        .iter()
        .map(|&w| hensel_lift_int(&cyclo_int, BigInt::from(w), &pb, p))
        .collect();

    // Per-embedding reductions of the monic polynomial and their F_p roots.
    let mut per_embedding_roots: Vec<Vec<BigInt>> = Vec::with_capacity(phi);
    for wl in &omegas_lifted {
        let coeffs_mod: Vec<BigInt> = monic
            .iter()
            .map(|c| eval_coords_mod(&c.coords_in(order), wl, &pb))
            .collect();
        let small: Vec<u64> = coeffs_mod
            .iter()
            .map(|c| (c.mod_floor(&BigInt::from(p))).to_u64().unwrap())
            .collect();
        let base_roots = fp.poly_roots(&small);
        let lifted: Vec<BigInt> = base_roots
            .into_iter()
            .map(|r| hensel_lift_int(&coeffs_mod, BigInt::from(r), &pb, p))
            .collect();
        per_embedding_roots.push(lifted);
    }

    // Vandermonde V[i][j] = omega_i^j mod p^b, inverted once.
    let v: Vec<Vec<BigInt>> = omegas_lifted
        .iter()
        .map(|w| {
            (0..phi)
                .map(|j| w.modpow(&BigInt::from(j), &pb))
                .collect()
        })
        .collect();
    let vinv = match invert_matrix_mod(&v, &pb, p) {
        Some(m) => m,
        None => return vec![], // cannot happen for distinct roots mod p
    };

    // Enumerate tuples of per-embedding roots; each determines candidate
    // coordinates by the inverse Vandermonde. Exact verification filters.
    if per_embedding_roots.iter().any(Vec::is_empty) {
        return vec![];
    }
    let mut found: Vec<Cyclo> = Vec::new();
    let total: usize = per_embedding_roots.iter().map(Vec::len).product();
    const TUPLE_CAP: usize = 200_000;
    if total > TUPLE_CAP {
        // Degenerates only for huge degree and order simultaneously.
        return vec![];
    }
    let mut idx = vec![0usize; phi];
    'outer: loop {
        let values: Vec<&BigInt> = (0..phi).map(|i| &per_embedding_roots[i][idx[i]]).collect();
        // c = Vinv * values, balanced lift.
        let half = &pb / BigInt::from(2);
        let mut coords = Vec::with_capacity(phi);
        for row in &vinv {
            let mut acc = BigInt::zero();
            for (a, val) in row.iter().zip(&values) {
                acc += a * *val;
            }
            let mut r = acc.mod_floor(&pb);
            if r > half {
                r -= &pb;
            }
            coords.push(BigRational::from_integer(r));
        }
        let candidate_scaled = cyclo_from_coords(coords, order);
        // Undo the monic transform and the denominator clearing: x = y / lc.
        if let Some(lc_inv) = lc.inv() {
            let candidate = candidate_scaled.mul(&lc_inv);
            let p_orig = CPoly(poly.to_vec());
            if p_orig.eval(&candidate).is_zero() && !found.contains(&candidate) {
                found.push(candidate);
            }
        }
        // advance mixed-radix counter
        for i in 0..phi {
            idx[i] += 1;
            if idx[i] < per_embedding_roots[i].len() {
                continue 'outer;
            }
            idx[i] = 0;
        }
        break;
    }
    found
}

fn cyclo_from_coords(coords: Vec<BigRational>, order: u32) -> Cyclo {
    let zeta = Cyclo::zeta(order);
    let mut acc = Cyclo::zero();
    let mut power = Cyclo::one();
    for c in coords {
        acc = acc.add(&Cyclo::rational(c).mul(&power));
        power = power.mul(&zeta);
    }
    acc
}

fn cyclotomic_int_coeffs(order: u32) -> Vec<BigInt> {
    // Reconstruct integer coefficients of the cyclotomic polynomial from the
    // minimal polynomial of zeta: phi(n) coordinates of zeta^phi determine it.
    let phi = euler_phi(order) as usize;
    let zeta = Cyclo::zeta(order);
    let top = zeta.pow(phi as u32);
    let coords = top.coords_in(order);
    let mut out: Vec<BigInt> = coords
        .iter()
        .map(|c| {
            assert!(c.denom().is_one());
            -c.numer().clone()
        })
        .collect();
    out.push(BigInt::one());
    out
}

/// Smallest prime p = 1 (mod n) such that the cyclotomic polynomial has
/// phi(n) distinct roots mod p and the input stays squarefree mod every
/// embedding. Returns the prime and the roots of the cyclotomic polynomial.
fn choose_prime(monic: &[Cyclo], order: u32) -> (u64, Vec<u64>) {
    let phi = euler_phi(order) as usize;
    let mut p = order as u64 + 1;
    'search: loop {
        p = next_prime_congruent(p, order as u64);
        let fp = Fp { p };
        // roots of the cyclotomic polynomial mod p
        let cyclo: Vec<u64> = cyclotomic_int_coeffs(order)
            .iter()
            .map(|c| fp.from_bigint(c))
            .collect();
        let omegas = fp.poly_roots(&cyclo);
        if omegas.len() != phi {
            p += 1;
            continue;
        }
        for &w in &omegas {
            let coeffs: Vec<u64> = monic
                .iter()
                .map(|c| fp.eval_coords(&c.coords_in(order), w))
                .collect();
            if coeffs.last() == Some(&0) {
                p += 1;
                continue 'search;
            }
            // squarefree mod p: gcd(f, f') constant
            if !fp.is_squarefree(&coeffs) {
                p += 1;
                continue 'search;
            }
        }
        return (p, omegas);
    }
}

fn next_prime_congruent(start: u64, modulus: u64) -> u64 {
    let mut p = start.max(3);
    loop {
        if p % modulus == 1 % modulus && is_prime(p) {
            return p;
        }
        p += 1;
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Arithmetic mod a small prime.
struct Fp {
    p: u64,
}

impl Fp {
    fn from_bigint(&self, c: &BigInt) -> u64 {
        c.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn eval_poly(&self, coeffs: &[u64], x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in coeffs.iter().rev() {
            acc = (self.mul(acc, x) + c) % self.p;
        }
        acc
    }

    fn eval_coords(&self, coords: &[BigRational], omega: u64) -> u64 {
        // coordinates are integers at this point
        let mut acc = 0u64;
        let mut pw = 1u64;
        for c in coords {
            debug_assert!(c.denom().is_one());
            let v = self.from_bigint(c.numer());
            acc = (acc + self.mul(v, pw)) % self.p;
            pw = self.mul(pw, omega);
        }
        acc
    }

    fn poly_roots(&self, coeffs: &[u64]) -> Vec<u64> {
        let mut out = vec![];
        for x in 0..self.p {
            if self.eval_poly(coeffs, x) == 0 {
                out.push(x);
            }
        }
        out
    }

    fn is_squarefree(&self, coeffs: &[u64]) -> bool {
        let der: Vec<u64> = coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mul(c, (i as u64) % self.p))
            .collect();
        self.poly_gcd_degree(coeffs, &der) == 0
    }

    fn poly_gcd_degree(&self, a: &[u64], b: &[u64]) -> usize {
        let trim = |v: &[u64]| -> Vec<u64> {
            let mut v = v.to_vec();
            while v.last() == Some(&0) {
                v.pop();
            }
            v
        };
        let mut a = trim(a);
        let mut b = trim(b);
        while !b.is_empty() {
            // a mod b
            let lead_inv = self.inv(*b.last().unwrap());
            while a.len() >= b.len() && !a.is_empty() {
                let k = a.len() - b.len();
                let c = self.mul(*a.last().unwrap(), lead_inv);
                for i in 0..b.len() {
                    let sub = self.mul(c, b[i]);
                    a[i + k] = (a[i + k] + self.p - sub) % self.p;
                }
                a = trim(&a);
            }
            std::mem::swap(&mut a, &mut b);
        }
        a.len().saturating_sub(1)
    }

    fn inv(&self, a: u64) -> u64 {
        // Fermat
        let mut result = 1u64;
        let mut base = a % self.p;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }
}

/// Evaluate integer coordinates at omega modulo pb.
fn eval_coords_mod(coords: &[BigRational], omega: &BigInt, pb: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    let mut pw = BigInt::one();
    for c in coords {
        debug_assert!(c.denom().is_one());
        acc = (acc + c.numer() * &pw).mod_floor(pb);
        pw = (pw * omega).mod_floor(pb);
    }
    acc
}

/// Newton-lift a simple root of an integer polynomial from mod p to mod p^b.
fn hensel_lift_int(coeffs: &[BigInt], root: BigInt, pb: &BigInt, p: u64) -> BigInt {
    let eval = |cs: &[BigInt], x: &BigInt, m: &BigInt| -> BigInt {
        let mut acc = BigInt::zero();
        for c in cs.iter().rev() {
            acc = (acc * x + c).mod_floor(m);
        }
        acc
    };
    let der: Vec<BigInt> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    let mut x = root;
    let mut modulus = BigInt::from(p);
    while &modulus < pb {
        modulus = (&modulus * &modulus).min(pb.clone());
        let fx = eval(coeffs, &x, &modulus);
        let dfx = eval(&der, &x, &modulus);
        // derivative is a unit mod p for a simple root
        let dinv = mod_inverse(&dfx, &modulus).expect("simple root has unit derivative");
        x = (&x - fx * dinv).mod_floor(&modulus);
    }
    x.mod_floor(pb)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Gaussian inversion mod p^b (pivots are units mod p).
fn invert_matrix_mod(m: &[Vec<BigInt>], pb: &BigInt, p: u64) -> Option<Vec<Vec<BigInt>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut inv: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let pbig = BigInt::from(p);
    for col in 0..n {
        let pivot_row = (col..n).find(|&r| !a[r][col].mod_floor(&pbig).is_zero())?;
        a.swap(col, pivot_row);
        inv.swap(col, pivot_row);
        let pinv = mod_inverse(&a[col][col], pb)?;
        for j in 0..n {
            a[col][j] = (&a[col][j] * &pinv).mod_floor(pb);
            inv[col][j] = (&inv[col][j] * &pinv).mod_floor(pb);
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let t1 = (&f * &a[col][j]).mod_floor(pb);
                a[r][j] = (&a[r][j] - t1).mod_floor(pb);
                let t2 = (&f * &inv[col][j]).mod_floor(pb);
                inv[r][j] = (&inv[r][j] - t2).mod_floor(pb);
            }
        }
    }
    Some(inv)
}

/// All roots in k(t) of a polynomial with coefficients in k(t). Such roots of
/// the cleared monic form are polynomials in t; they are recovered from a
/// squarefree specialization at t = c by t-adic Newton lifting.
pub fn ratfunc_roots(poly: &[RatFunc], order: u32) -> Vec<RatFunc> {
    let deg = match poly.iter().rposition(|c| !c.is_zero()) {
        Some(d) => d,
        None => panic!("root extraction on the zero polynomial"),
    };
    if deg == 0 {
        return vec![];
    }
    let poly = &poly[..=deg];

    // Squarefree part over k(t).
    let sf = ratfunc_squarefree(poly);

    // Clear denominators to k[t] coefficients (lcm of the denominators),
    // then monicize by y = lc * x.
    let mut lcm = Poly::one();
    for c in &sf {
        let d = c.denominator();
        let g = lcm.gcd(d);
        lcm = lcm.mul(&d.div_rem(&g).0);
    }
    let d = sf.len() - 1;
    let cleared: Vec<Poly> = sf
        .iter()
        .map(|c| {
            let scaled = c.mul(&RatFunc::from_poly(lcm.clone()));
            debug_assert!(scaled.denominator().is_one());
            scaled.numerator().clone()
        })
        .collect();
    let lc = cleared[d].clone();
    let monic: Vec<Poly> = cleared
        .iter()
        .enumerate()
        .map(|(i, a)| {
            if i == d {
                Poly::one()
            } else {
                let mut m = a.clone();
                for _ in 0..(d - 1 - i) {
                    m = m.mul(&lc);
                }
                m
            }
        })
        .collect();

    // Degree bound for polynomial roots of a monic polynomial over k[t].
    let dmax = monic
        .iter()
        .filter_map(|c| c.degree())
        .max()
        .unwrap_or(0);
    let prec = dmax + 2;

    // Find a specialization point t = c with squarefree reduction.
    let mut shift_candidates: Vec<Cyclo> = vec![Cyclo::zero()];
    for v in 1..=16i64 {
        shift_candidates.push(Cyclo::from_int(v));
        shift_candidates.push(Cyclo::from_int(-v));
    }
    for c in shift_candidates {
        let specialized: Vec<Cyclo> = monic.iter().map(|m| m.eval(&c)).collect();
        let base_roots = {
            let spec_sf_ok = {
                let p = CPoly(specialized.clone());
                let der = p.derivative();
                if der.is_zero() {
                    false
                } else {
                    gcd(CPoly(specialized.clone()), der).degree() == 0
                }
            };
            if !spec_sf_ok {
                continue;
            }
            cyclo_roots(&specialized, order)
        };
        // Shift coefficients: s = t - c, so work with m(x, s + c).
        let shifted: Vec<Poly> = monic.iter().map(|m| m.shift(&c)).collect();
        let mut out: Vec<RatFunc> = Vec::new();
        for r0 in base_roots {
            if let Some(root_poly) = lift_series_root(&shifted, &r0, prec) {
                // Shift back: t -> t - c in the root polynomial.
                let unshifted = root_poly.shift(&c.neg());
                let candidate = RatFunc::from_poly(unshifted)
                    .div(&RatFunc::from_poly(lc.clone()))
                    .unwrap();
                // Verify in the original polynomial.
                let mut acc = RatFunc::zero();
                for coeff in poly.iter().rev() {
                    acc = acc.mul(&candidate).add(coeff);
                }
                if acc.is_zero() && !out.contains(&candidate) {
                    out.push(candidate);
                }
            }
        }
        return out;
    }
    vec![]
}

/// Newton-lift a simple base root to a series root; accept only if the series
/// is a polynomial within the precision window (tail identically zero).
fn lift_series_root(shifted: &[Poly], base: &Cyclo, prec: usize) -> Option<Poly> {
    let coeffs: Vec<Series> = shifted
        .iter()
        .map(|p| Series::from_coeffs(p.coeffs().to_vec(), prec))
        .collect();
    let der: Vec<Series> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.scale(&Cyclo::from_int(i as i64)))
        .collect();
    let eval = |cs: &[Series], x: &Series| -> Series {
        let mut acc = Series::zero(prec);
        for c in cs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    };
    let mut x = Series::constant(base.clone(), prec);
    let steps = usize::BITS - prec.leading_zeros() + 1;
    for _ in 0..steps {
        let fx = eval(&coeffs, &x);
        if fx.is_zero() {
            break;
        }
        let dfx = eval(&der, &x);
        let dinv = dfx.inv()?;
        x = x.sub(&fx.mul(&dinv));
    }
    if !eval(&coeffs, &x).is_zero() {
        return None;
    }
    // Polynomial tail check up to the degree bound.
    let max_deg = prec - 2;
    for i in max_deg + 1..prec {
        if !x.coeff(i).is_zero() {
            return None;
        }
    }
    Some(Poly::new((0..=max_deg).map(|i| x.coeff(i).clone()).collect()))
}

fn ratfunc_squarefree(poly: &[RatFunc]) -> Vec<RatFunc> {
    let der: Vec<RatFunc> = poly
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.mul(&RatFunc::from_int(i as i64)))
        .collect();
    let g = ratfunc_poly_gcd(poly, &der);
    if g.len() <= 1 {
        return poly.to_vec();
    }
    ratfunc_poly_div(poly, &g)
}

fn ratfunc_poly_gcd(a: &[RatFunc], b: &[RatFunc]) -> Vec<RatFunc> {
    let trim = |v: &[RatFunc]| -> Vec<RatFunc> {
        let mut v = v.to_vec();
        while v.last().is_some_and(RatFunc::is_zero) {
            v.pop();
        }
        v
    };
    let mut a = trim(a);
    let mut b = trim(b);
    while !b.is_empty() {
        let r = ratfunc_poly_rem(&a, &b);
        a = b;
        b = trim(&r);
    }
    // monic normalization
    if let Some(l) = a.last().cloned() {
        let li = l.inv().unwrap();
        for c in &mut a {
            *c = c.mul(&li);
        }
    }
    a
}

fn ratfunc_poly_rem(num: &[RatFunc], den: &[RatFunc]) -> Vec<RatFunc> {
    let dd = den.len() - 1;
    let lead_inv = den[dd].inv().unwrap();
    let mut rem = num.to_vec();
    let steps = rem.len().saturating_sub(dd);
    for k in (0..steps).rev() {
        let c = rem[k + dd].mul(&lead_inv);
        if !c.is_zero() {
            for i in 0..=dd {
                rem[i + k] = rem[i + k].sub(&c.mul(&den[i]));
            }
        }
    }
    rem.truncate(dd.max(1));
    rem
}

fn ratfunc_poly_div(num: &[RatFunc], den: &[RatFunc]) -> Vec<RatFunc> {
    let dd = den.len() - 1;
    let lead_inv = den[dd].inv().unwrap();
    let mut rem = num.to_vec();
    let steps = rem.len().saturating_sub(dd);
    let mut quot = vec![RatFunc::zero(); steps.max(1)];
    for k in (0..steps).rev() {
        let c = rem[k + dd].mul(&lead_inv);
        if !c.is_zero() {
            for i in 0..=dd {
                rem[i + k] = rem[i + k].sub(&c.mul(&den[i]));
            }
            quot[k] = c;
        }
    }
    quot
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::parse::parse_scalar;

    fn c(v: i64) -> Cyclo {
        Cyclo::from_int(v)
    }

    #[test]
    fn rational_roots_including_fractions() {
        // (2x - 1)(x + 3) = 2x^2 + 5x - 3
        let roots = cyclo_roots(&[c(-3), c(5), c(2)], 1);
        assert_eq!(roots.len(), 2);
        let half = Cyclo::rational(BigRational::new(BigInt::from(1), BigInt::from(2)));
        assert!(roots.contains(&half));
        assert!(roots.contains(&c(-3)));
    }

    #[test]
    fn cyclotomic_roots_of_quadratic() {
        // x^2 + x + 1 has roots zeta_3 and zeta_3^2
        let roots = cyclo_roots(&[c(1), c(1), c(1)], 3);
        let z = Cyclo::zeta(3);
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&z));
        assert!(roots.contains(&z.mul(&z)));
    }

    #[test]
    fn irrational_roots_are_not_reported() {
        // x^2 - 2 has no roots in Q(zeta_3)
        let roots = cyclo_roots(&[c(-2), c(0), c(1)], 3);
        assert!(roots.is_empty());
    }

    #[test]
    fn mixed_roots_with_zeta_coefficients() {
        // (x - 1)(x - z)(x + z^2) over Q(zeta_3)
        let z = Cyclo::zeta(3);
        let r1 = c(1);
        let r2 = z.clone();
        let r3 = z.mul(&z).neg();
        // expand (x - r1)(x - r2)(x - r3)
        let e1 = r1.add(&r2).add(&r3);
        let e2 = r1.mul(&r2).add(&r1.mul(&r3)).add(&r2.mul(&r3));
        let e3 = r1.mul(&r2).mul(&r3);
        let poly = [e3.neg(), e2, e1.neg(), c(1)];
        let roots = cyclo_roots(&poly, 3);
        assert_eq!(roots.len(), 3);
        assert!(roots.contains(&r1) && roots.contains(&r2) && roots.contains(&r3));
    }

    #[test]
    fn repeated_roots_found_once() {
        // (x - 2)^2 (x + 1)
        let poly = [c(4), c(0), c(-3), c(1)];
        let roots = cyclo_roots(&poly, 1);
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&c(2)) && roots.contains(&c(-1)));
    }

    #[test]
    fn quintic_field_roots() {
        // (x - zeta_5)(x - 3) over Q(zeta_5): phi = 4 embeddings recombine
        let z = Cyclo::zeta(5);
        let poly = [z.mul(&c(3)), z.add(&c(3)).neg(), c(1)];
        let roots = cyclo_roots(&poly, 5);
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&z) && roots.contains(&c(3)));
    }

    #[test]
    fn ratfunc_polynomial_roots() {
        // (x - (1 + t))(x - t^2) over Q(t)
        let n = 1;
        let r1 = parse_scalar("1 + t", n).unwrap();
        let r2 = parse_scalar("t^2", n).unwrap();
        let poly = [
            r1.mul(&r2),
            r1.add(&r2).neg(),
            RatFunc::one(),
        ];
        let roots = ratfunc_roots(&poly, n);
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&r1) && roots.contains(&r2));
    }

    #[test]
    fn ratfunc_root_with_denominator_in_lc() {
        // (2x - t)(x + 1): root t/2
        let n = 1;
        let t = RatFunc::var();
        let poly = [
            t.neg(),
            RatFunc::from_int(2).sub(&t),
            RatFunc::from_int(2),
        ];
        let roots = ratfunc_roots(&poly, n);
        let half_t = t.div(&RatFunc::from_int(2)).unwrap();
        assert!(roots.contains(&half_t));
        assert!(roots.contains(&RatFunc::from_int(-1)));
    }

    #[test]
    fn ratfunc_no_rational_function_roots() {
        // x^2 - t has no roots in k(t)
        let poly = [RatFunc::var().neg(), RatFunc::zero(), RatFunc::one()];
        assert!(ratfunc_roots(&poly, 1).is_empty());
    }

    #[test]
    fn ratfunc_roots_colliding_at_zero() {
        // (x - t)(x + t): specialization at t = 0 is x^2, not squarefree,
        // so the search must move to another base point.
        let t = RatFunc::var();
        let poly = [t.mul(&t).neg(), RatFunc::zero(), RatFunc::one()];
        let roots = ratfunc_roots(&poly, 1);
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&t) && roots.contains(&t.neg()));
    }
}
