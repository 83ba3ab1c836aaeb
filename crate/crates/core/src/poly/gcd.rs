//! Multivariate gcd over Z by recursive primitive remainder sequences.

use super::multipoly::MultiPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

/// Greatest common divisor, normalised to be primitive up to its integer
/// content with positive grevlex leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    assert!(f.vars() == g.vars(), "gcd over different rings");
    if f.is_zero() {
        return g.normalize_sign();
    }
    if g.is_zero() {
        return f.normalize_sign();
    }
    let cf = f.content();
    let cg = g.content();
    let c = cf.gcd(&cg);
    if f.is_constant() || g.is_constant() {
        return MultiPoly::constant(f.vars(), c);
    }
    let pf = f.div_integer(&cf).unwrap();
    let pg = g.div_integer(&cg).unwrap();
    // monomial factor
    let mf = pf.monomial_content();
    let mg = pg.monomial_content();
    let mono = mf.gcd(&mg);
    let pf = pf.div_monomial(&mf).unwrap();
    let pg = pg.div_monomial(&mg).unwrap();
    let core = gcd_primitive(&pf, &pg);
    core.mul_monomial(&c, &mono).normalize_sign()
}

/// gcd of primitive polynomials with no monomial factor. Returns a
/// primitive result (sign unnormalised).
fn gcd_primitive(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let vars = f.vars().clone();
    if f.is_constant() || g.is_constant() {
        return MultiPoly::one(&vars);
    }
    if f.num_terms() == 1 || g.num_terms() == 1 {
        // a single term without monomial content is a constant, handled above;
        // after monomial removal a lone term can only be ±1.
        return MultiPoly::one(&vars);
    }
    if f == g || *f == -g {
        return f.clone();
    }
    // cheap trial divisions
    if f.num_terms() <= g.num_terms() {
        if g.div_exact(f).is_some() {
            return f.clone();
        }
    } else if f.div_exact(g).is_some() {
        return g.clone();
    }
    if probably_coprime(f, g) {
        return MultiPoly::one(&vars);
    }
    let vf = f.occurring_vars();
    let vg = g.occurring_vars();
    // a variable present in only one argument can be eliminated via content
    for &v in &vf {
        if !vg.contains(&v) {
            let c = content_in(f, v);
            return gcd(&c, g).primitive_part();
        }
    }
    for &v in &vg {
        if !vf.contains(&v) {
            let c = content_in(g, v);
            return gcd(f, &c).primitive_part();
        }
    }
    if let Some(h) = heuristic_gcd(f, g, &vf) {
        return h;
    }
    // main variable: smallest maximal degree
    let x = *vf
        .iter()
        .min_by_key(|&&v| (f.degree_in(v).max(g.degree_in(v)), v))
        .unwrap();
    let cf = content_in(f, x);
    let cg = content_in(g, x);
    let cont = gcd(&cf, &cg);
    let mut a = f.div_exact(&cf).unwrap();
    let mut b = g.div_exact(&cg).unwrap();
    if a.degree_in(x) < b.degree_in(x) {
        std::mem::swap(&mut a, &mut b);
    }
    let core = loop {
        let r = pseudo_remainder(&a, &b, x);
        if r.is_zero() {
            break b;
        }
        if r.degree_in(x) == 0 {
            break MultiPoly::one(&vars);
        }
        a = b;
        b = primitive_in(&r, x);
    };
    (&cont * &primitive_in(&core, x)).primitive_part()
}

/// Evaluation gcd: substitute a large integer `ξ` for one variable, take
/// the gcd of the images recursively, and read the candidate back off its
/// balanced `ξ`-adic digits. A candidate is only returned if it divides
/// both inputs; `None` sends the caller to the remainder sequence.
fn heuristic_gcd(f: &MultiPoly, g: &MultiPoly, vars: &[usize]) -> Option<MultiPoly> {
    let x = *vars.last()?;
    let bound = f.max_abs_coeff().min(g.max_abs_coeff());
    let mut xi: BigInt = BigInt::from(2) * bound + BigInt::from(29);
    let deg = f.degree_in(x).max(g.degree_in(x)) as u64;
    for _ in 0..4 {
        // keep the images a manageable size
        if xi.bits() * deg > 20_000 {
            return None;
        }
        let fx = f.eval_var(x, &xi);
        let gx = g.eval_var(x, &xi);
        if !fx.is_zero() && !gx.is_zero() {
            let mut h = gcd(&fx, &gx);
            let mut cand = MultiPoly::zero(f.vars());
            let mut i = 0u32;
            while !h.is_zero() {
                let digit = h.reduce_coeffs_symmetric(&xi);
                let shift = super::monomial::Monomial::variable(f.nvars(), x, i);
                cand = &cand + &digit.mul_monomial(&BigInt::one(), &shift);
                h = (&h - &digit).div_integer(&xi)?;
                i += 1;
            }
            if !cand.is_zero() {
                let cand = cand.primitive_part();
                if f.div_exact(&cand).is_some() && g.div_exact(&cand).is_some() {
                    return Some(cand);
                }
            }
        }
        xi = xi * BigInt::from(73_794) / BigInt::from(27_011);
    }
    None
}

/// Content of `f` viewed as a polynomial in variable `x` (gcd of its
/// coefficients, a polynomial free of `x`).
pub fn content_in(f: &MultiPoly, x: usize) -> MultiPoly {
    let coeffs = f.to_univariate(x);
    let mut nonzero: Vec<&MultiPoly> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    nonzero.sort_by_key(|c| c.num_terms());
    let mut g = MultiPoly::zero(f.vars());
    for c in nonzero {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Primitive part with respect to `x` (divides out `content_in` and the integer content).
pub fn primitive_in(f: &MultiPoly, x: usize) -> MultiPoly {
    if f.is_zero() {
        return f.clone();
    }
    let c = content_in(f, x);
    f.div_exact(&c).expect("content divides").primitive_part()
}

/// Sparse pseudo-remainder of `a` by `b` with respect to variable `x`,
/// up to a nonzero factor free of `x`.
pub fn pseudo_remainder(a: &MultiPoly, b: &MultiPoly, x: usize) -> MultiPoly {
    let db = b.degree_in(x);
    let lb = b.leading_coeff_in(x);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(x) >= db {
        let dr = r.degree_in(x);
        let lr = r.leading_coeff_in(x);
        let shift = super::monomial::Monomial::variable(r.nvars(), x, dr - db);
        let t = (&lr * b).mul_monomial(&BigInt::one(), &shift);
        r = &(&lb * &r) - &t;
    }
    r
}

/// Least common multiple with positive leading coefficient.
pub fn lcm(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    if f.is_zero() || g.is_zero() {
        return MultiPoly::zero(f.vars());
    }
    let d = gcd(f, g);
    (f * &g.div_exact(&d).unwrap()).normalize_sign()
}

// ---------------------------------------------------------------------------
// Fast coprimality certificate.
//
// If, after specialising all variables but one to integers and reducing
// modulo a word-size prime, the images of f and g keep their degrees in the
// remaining variable and are coprime there, then f and g have no common
// factor involving that variable. Applied to each occurring variable this
// proves gcd(f, g) = 1 for primitive inputs without monomial content.

const CERT_PRIMES: [u64; 2] = [2_147_483_629, 2_147_483_587];

fn probably_coprime(f: &MultiPoly, g: &MultiPoly) -> bool {
    let mut vars: Vec<usize> = f.occurring_vars();
    for v in g.occurring_vars() {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    'outer: for &x in &vars {
        if f.degree_in(x) == 0 || g.degree_in(x) == 0 {
            // a common factor cannot involve x
            continue;
        }
        for (attempt, &p) in CERT_PRIMES.iter().enumerate() {
            let point: Vec<u64> = (0..f.nvars())
                .map(|i| (i as u64 * 7919 + 12345 + attempt as u64 * 104_729) % p)
                .collect();
            let (Some(a), Some(b)) = (specialise(f, x, &point, p), specialise(g, x, &point, p)) else {
                continue;
            };
            if a.len() - 1 != f.degree_in(x) as usize || b.len() - 1 != g.degree_in(x) as usize {
                continue;
            }
            if crate::factor::modp::FpPoly::new(p, a)
                .gcd(&crate::factor::modp::FpPoly::new(p, b))
                .degree()
                == Some(0)
            {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Image of `f` in F_p[x] after substituting `point` for all other variables.
fn specialise(f: &MultiPoly, x: usize, point: &[u64], p: u64) -> Option<Vec<u64>> {
    let d = f.degree_in(x) as usize;
    let mut out = vec![0u64; d + 1];
    let pb = BigInt::from(p);
    for (m, c) in f.terms() {
        let mut t = c.mod_floor(&pb).try_into().unwrap_or(0u64) as u128;
        for (i, e) in m.exponents().iter().enumerate() {
            if i != x && *e > 0 {
                t = t * pow_mod(point[i], *e as u64, p) as u128 % p as u128;
            }
        }
        let k = m.exponent(x) as usize;
        out[k] = ((out[k] as u128 + t) % p as u128) as u64;
    }
    while out.len() > 1 && out.last() == Some(&0) {
        out.pop();
    }
    if out.iter().all(|c| *c == 0) {
        return None;
    }
    Some(out)
}

fn pow_mod(b: u64, mut e: u64, p: u64) -> u64 {
    let m = p as u128;
    let mut r: u128 = 1;
    let mut bb = b as u128 % m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * bb % m;
        }
        bb = bb * bb % m;
        e >>= 1;
    }
    r as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarList;

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s, &VarList::new(&["g", "h"])).unwrap()
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&p("g^2 - h^2"), &p("g^2 + 2*g*h + h^2")), p("g + h"));
        assert_eq!(gcd(&p("6*g*h"), &p("4*g^2")), p("2*g"));
        assert_eq!(gcd(&p("g + 1"), &p("h + 1")), p("1"));
        assert_eq!(gcd(&p("0"), &p("-3*g")), p("3*g"));
        let a = p("3*h^4 + 27*h^2 - 25");
        let b = p("27*g^2 - 25");
        let c = p("g*h - 7");
        assert_eq!(gcd(&(&a * &c), &(&b * &c)), c);
        assert_eq!(gcd(&(&a * &c).scale(&BigInt::from(4)), &(&c * &c).scale(&BigInt::from(6))), c.scale(&BigInt::from(2)));
    }

    #[test]
    fn lcm_example() {
        assert_eq!(lcm(&p("g^2 - 1"), &p("g + 1")), p("g^2 - 1"));
    }
}
