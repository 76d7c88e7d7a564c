// SPDX-License-Identifier: Apache-2.0
//! Structure constants of the universal families, entered once as expressions in the parameters.

use crate::algebra::Algebra;
use crate::error::Result;
use crate::field::{Field, Scalar};
use crate::linalg::{axpy, Vector};

use super::builder::{Expansion, TableBuilder};

/// Σ c_k v_k
fn comb(n: usize, f: Field, terms: &[(Scalar, &Vector)]) -> Vector {
    let mut out = crate::linalg::zero_vec(f, n);
    for (c, v) in terms {
        axpy(&mut out, c, v);
    }
    out
}

fn div(a: Scalar, b: Scalar) -> Result<Scalar> {
    a.try_div(&b)
}

/// q̂w = σw for every basis vector w.
fn scalar_action(b: &mut TableBuilder, q: &Vector, sigma: &Scalar) {
    for k in 0..b.dim() {
        let mut w = b.zero();
        w[k] = b.field.one();
        let val = w.iter().map(|x| x * sigma).collect();
        b.rule(q.clone(), w, val);
    }
}

pub fn sigma_iii(xi: &Scalar, eta: &Scalar, alpha: &Scalar) -> Result<Scalar> {
    let num = -(xi * (xi + 1) * (xi - eta) * alpha) - xi * (xi * xi * 3 + xi * eta * 3 - eta - 1);
    div(num, (xi * 2 - 1) * 4)
}

pub fn iii(f: Field, xi: &Scalar, eta: &Scalar, alpha: &Scalar) -> Result<Algebra> {
    let mut b = TableBuilder::new(f, &["q"], -1, 1, Expansion::None);
    let n = b.dim();
    let q = b.v("q");
    let sigma = sigma_iii(xi, eta, alpha)?;
    scalar_action(&mut b, &q, &sigma);
    for i in -1..=1 {
        b.rule(b.a(i), b.a(i), b.a(i));
    }
    let half_diff = (xi - eta) / 2;
    let core = comb(n, f, &[(f.one(), &q), (&half_diff * (alpha + 1), &b.a(0)), (half_diff.clone(), &b.a(1)), (half_diff, &b.a(-1))]);
    for i in [-1, 0] {
        let v = comb(n, f, &[(f.one(), &core), (eta.clone(), &b.a(i)), (eta.clone(), &b.a(i + 1))]);
        b.rule(b.a(i), b.a(i + 1), v);
    }
    let v = comb(n, f, &[(-(alpha - 1), &core), (eta.clone(), &b.a(1)), (eta.clone(), &b.a(-1))]);
    b.rule(b.a(-1), b.a(1), v);
    b.solve()
}

pub fn sigma_iv1(xi: &Scalar, eta: &Scalar) -> Scalar {
    (-(xi * eta * 2) - xi + eta) / 2
}

pub fn iv1(f: Field, xi: &Scalar, eta: &Scalar) -> Result<Algebra> {
    let mut b = TableBuilder::new(f, &["q"], -1, 2, Expansion::None);
    let n = b.dim();
    let q = b.v("q");
    scalar_action(&mut b, &q, &sigma_iv1(xi, eta));
    let s = b.asum(-1..=2);
    for i in -1..=2 {
        for j in i..=2 {
            let v = match j - i {
                0 => b.a(i),
                1 | 3 => comb(n, f, &[(f.one(), &q), ((xi - eta) / 2, &s), (eta.clone(), &b.a(i)), (eta.clone(), &b.a(j))]),
                _ => b.zero(),
            };
            b.rule(b.a(i), b.a(j), v);
        }
    }
    b.solve()
}

pub fn iv2(f: Field, xi: &Scalar, eta: &Scalar, mu: &Scalar) -> Result<Algebra> {
    let mut b = TableBuilder::new(f, &["p1"], -1, 2, Expansion::Periodic(4));
    let n = b.dim();
    let p = b.v("p1");
    let s = b.asum(-1..=2);
    let e2 = eta * eta;
    let cp = &e2 * 2 - eta * xi - eta / 2 + div(xi - xi * xi * 2, mu * 2)?;
    let cs = &e2 * eta * mu / 2 + &e2 * eta - xi * &e2 / 2 + div(xi * eta - xi * xi * eta * 2, mu * 4)?;
    b.rule(p.clone(), p.clone(), comb(n, f, &[(cp, &p), (cs, &s)]));
    let half_diff = (xi - eta) / 2;
    let ca = -(mu * &e2) + eta * (xi * 2 - eta * 2 - 1) / 2;
    for i in -1..=2 {
        let v = comb(
            n,
            f,
            &[
                (&half_diff * 2, &p),
                (&half_diff * eta, &b.a(i - 1)),
                (&half_diff * eta, &b.a(i + 1)),
                (ca.clone(), &b.a(i)),
            ],
        );
        b.rule(p.clone(), b.a(i), v);
    }
    for i in -1..=2 {
        for j in i..=2 {
            let v = match j - i {
                0 => b.a(i),
                1 | 3 => comb(n, f, &[(f.one(), &p), (eta.clone(), &b.a(i)), (eta.clone(), &b.a(j))]),
                // r_{2,i} + η(a_i + a_{i+2}) = −μ(2p̂₁ + η(a_{i+1} + a_{i−1}))
                _ => comb(n, f, &[(-(mu * 2), &p), (-(mu * eta), &b.a(i + 1)), (-(mu * eta), &b.a(i - 1))]),
            };
            b.rule(b.a(i), b.a(j), v);
        }
    }
    b.solve()
}

pub fn iv3(f: Field) -> Result<Algebra> {
    // a_{i+4} = a_i − a_{i+3} + a_{i+1}
    let rec = vec![f.one(), f.one(), f.zero(), f.int(-1)];
    let mut b = TableBuilder::new(f, &["q"], -1, 2, Expansion::Recurrence(rec));
    let n = b.dim();
    let q = b.v("q");
    scalar_action(&mut b, &q, &f.zero());
    let core = comb(n, f, &[(f.one(), &q), (f.int(-1), &b.a(0)), (f.int(-1), &b.a(1)), (f.frac(-1, 2)?, &b.a(-1)), (f.frac(-1, 2)?, &b.a(2))]);
    for i in -8..=8 {
        b.rule(b.a(i), b.a(i), b.a(i));
        let v = comb(n, f, &[(f.one(), &core), (f.int(2), &b.a(i)), (f.int(2), &b.a(i + 1))]);
        b.rule(b.a(i), b.a(i + 1), v);
        let v = comb(n, f, &[(f.one(), &b.a(i)), (f.int(-1), &b.a(i + 1)), (f.one(), &b.a(i - 1))]);
        b.rule(b.a(i), b.a(i + 2), v);
    }
    b.solve()
}

pub fn eta_v1(xi: &Scalar) -> Scalar {
    (xi * 5 - 1) / 8
}

pub fn v1(f: Field, xi: &Scalar) -> Result<Algebra> {
    let eta = eta_v1(xi);
    let mut b = TableBuilder::new(f, &["p1"], -2, 2, Expansion::Periodic(5));
    let n = b.dim();
    let p = b.v("p1");
    let s = b.asum(-2..=2);
    let (u, w) = (xi * 3 + 1, xi * 5 - 1);
    let cp = -(&u * &w * 5) / 128;
    let cs = -((xi * 7 - 3) * &u * &w) / 2048;
    b.rule(p.clone(), p.clone(), comb(n, f, &[(cp, &p), (cs, &s)]));
    // a_i coefficient −(3ξ+1)(5ξ−1)/64; the fusion law rejects any other value.
    let ca = -(&u * &w) / 64;
    let cn = &u * &w / 128;
    for i in -2..=2 {
        let v = comb(n, f, &[(&u / 8, &p), (ca.clone(), &b.a(i)), (cn.clone(), &b.a(i + 1)), (cn.clone(), &b.a(i - 1))]);
        b.rule(p.clone(), b.a(i), v);
    }
    for i in -2..=2 {
        for j in i..=2 {
            let v = match j - i {
                0 => b.a(i),
                1 | 4 => comb(n, f, &[(f.one(), &p), (eta.clone(), &b.a(i)), (eta.clone(), &b.a(j))]),
                _ => comb(n, f, &[(f.int(-1), &p), (-(&eta / 2), &s), (eta.clone(), &b.a(i)), (eta.clone(), &b.a(j))]),
            };
            b.rule(b.a(i), b.a(j), v);
        }
    }
    b.solve()
}

/// The ideal generator â₂ + â₋₂ − 4(â₁ + â₋₁) + 6â₀ of V₂.
pub fn v2_kernel(f: Field, alg: &Algebra) -> Vector {
    let mut v = alg.zero();
    for (name, c) in [("a2", 1), ("a-2", 1), ("a1", -4), ("a-1", -4), ("a0", 6)] {
        v[alg.index_of(name).expect("V2 basis")] = f.int(c);
    }
    v
}

pub fn v2(f: Field, xi: &Scalar) -> Result<Algebra> {
    let eta = f.frac(1, 2)?;
    // a_{i+5} = a_i − 5a_{i+1} + 10a_{i+2} − 10a_{i+3} + 5a_{i+4}
    let rec = [1, -5, 10, -10, 5].map(|c| f.int(c)).to_vec();
    let mut b = TableBuilder::new(f, &["p1"], -2, 2, Expansion::Recurrence(rec));
    let n = b.dim();
    let p = b.v("p1");
    let w = comb(n, f, &[(f.one(), &b.a(2)), (f.one(), &b.a(-2)), (f.int(-4), &b.a(1)), (f.int(-4), &b.a(-1)), (f.int(6), &b.a(0))]);
    let cw = (xi * 2 - 1) * (xi * 2 - 3) / 32;
    b.rule(p.clone(), p.clone(), comb(n, f, &[(cw, &w)]));
    let c = (xi * 2 - 1) / 8;
    for i in -7..=7 {
        let v = comb(n, f, &[(&c * 4, &p), (&c * -2, &b.a(i)), (c.clone(), &b.a(i + 1)), (c.clone(), &b.a(i - 1))]);
        b.rule(p.clone(), b.a(i), v);
        b.rule(b.a(i), b.a(i), b.a(i));
        let v = comb(n, f, &[(f.one(), &p), (eta.clone(), &b.a(i)), (eta.clone(), &b.a(i + 1))]);
        b.rule(b.a(i), b.a(i + 1), v);
        let v = comb(n, f, &[(f.int(4), &p), (f.frac(-1, 4)?, &w), (eta.clone(), &b.a(i)), (eta.clone(), &b.a(i + 2))]);
        b.rule(b.a(i), b.a(i + 2), v);
    }
    b.solve()
}

pub fn sigma_vi1(xi: &Scalar) -> Scalar {
    -(xi * xi * 7 + xi * 2) / 4
}

pub fn vi1(f: Field, xi: &Scalar) -> Result<Algebra> {
    let eta = xi / 2;
    let mut b = TableBuilder::new(f, &["q", "p1"], -2, 3, Expansion::Periodic(6));
    let n = b.dim();
    let (q, p) = (b.v("q"), b.v("p1"));
    let s = b.asum(-2..=3);
    scalar_action(&mut b, &q, &sigma_vi1(xi));
    let x2 = xi * xi;
    // q̂ − 2p̂₁ + (ξ/2)Σâ
    let t = comb(n, f, &[(f.one(), &q), (f.int(-2), &p), (eta.clone(), &s)]);
    let v = comb(n, f, &[(&x2 / 16, &t), (-(&x2 + xi * 2) / 8, &p)]);
    b.rule(p.clone(), p.clone(), v);
    let even = b.asum([2, -2, 0]);
    let odd = b.asum([3, -1, 1]);
    for i in -8..=8 {
        let v = comb(n, f, &[(eta.clone(), &p), (-(&x2 / 4), &b.a(i)), (&x2 / 8, &b.a(i + 1)), (&x2 / 8, &b.a(i - 1))]);
        b.rule(p.clone(), b.a(i), v);
        for j in i..i + 6 {
            let sym = comb(n, f, &[(eta.clone(), &b.a(i)), (eta.clone(), &b.a(j))]);
            let v = match j - i {
                0 => b.a(i),
                1 | 5 => comb(n, f, &[(f.one(), &p), (f.one(), &sym)]),
                2 | 4 => {
                    let cls = if i.rem_euclid(2) == 0 { &even } else { &odd };
                    comb(n, f, &[(-(xi / 4), cls), (f.one(), &sym)])
                }
                _ => comb(n, f, &[(f.one(), &t), (f.one(), &sym)]),
            };
            b.rule(b.a(i), b.a(j), v);
        }
    }
    b.solve()
}

pub fn eta_vi2(xi: &Scalar) -> Result<Scalar> {
    div(-(xi * xi), (xi * 2 - 1) * 4)
}

pub fn lambda1_vi2(xi: &Scalar) -> Result<Scalar> {
    let d = xi * 2 - 1;
    div(-(xi * xi * (xi * 3 - 2)), &d * &d * 16)
}

pub fn sigma_vi2(xi: &Scalar) -> Result<Scalar> {
    div(-((xi * 3 - 2) * (xi * 5 - 2) * (xi * xi * 12 - xi - 2)), (xi * 2 - 1) * (xi * 9 - 4) * 8)
}

pub fn vi2(f: Field, xi: &Scalar) -> Result<Algebra> {
    let eta = eta_vi2(xi)?;
    let lam1 = lambda1_vi2(xi)?;
    let mut b = TableBuilder::new(f, &["q", "p1"], -2, 3, Expansion::Periodic(6));
    let n = b.dim();
    let (q, p) = (b.v("q"), b.v("p1"));
    scalar_action(&mut b, &q, &sigma_vi2(xi)?);
    let x2 = xi * xi;
    let d1 = xi * 2 - 1; // 2ξ − 1
    let d5 = xi * 5 - 2; // 5ξ − 2
    let d9 = xi * 9 - 4; // 9ξ − 4
    let k1 = div((xi * 3 - 2) * &d5 * &d5, &x2 * &d9)?;
    let k2 = div((xi * 3 - 2) * &d5, &d1 * 8)?;
    let k3 = div(&x2 * 21 - xi * 18 + 4, &d1 * 8)?;
    let r2 = |i: i64| -> Vector {
        comb(
            n,
            f,
            &[
                (f.one(), &q),
                (-k1.clone(), &p),
                (k2.clone(), &b.asum([i + 3, i + 1, i - 1])),
                (k3.clone(), &b.asum([i + 2, i - 2, i])),
            ],
        )
    };
    let c = div(x2.clone(), &d1 * 4)?; // ξ²/(4(2ξ−1))
    let r3 = |i: i64| -> Result<Vector> {
        let u = comb(n, f, &[(f.int(2), &p), (-c.clone(), &b.asum([i + 1, i - 1]))]);
        let w = comb(n, f, &[(f.int(2), &r2(i)), (-c.clone(), &b.asum([i + 2, i - 2]))]);
        Ok(comb(
            n,
            f,
            &[
                (div(&d1 * 2, xi.clone())?, &u),
                (-div(&d1 * 2, d5.clone())?, &w),
                (c.clone(), &b.a(i + 3)),
                (div(xi * (&x2 * 29 - xi * 22 + 4), &d1 * &d5 * 4)?, &b.a(i)),
            ],
        ))
    };
    let x4 = &x2 * &x2;
    let pp = comb(
        n,
        f,
        &[
            (div(&x2 * (&x2 * 39 - xi * 22 + 2), &d1 * &d1 * 16)?, &p),
            (-div(&x4 * &d9, &d1 * &d1 * &d5 * 32)?, &r2(0)),
            (-div(&x4 * (xi * 3 - 1) * &d9, &d1 * &d1 * &d1 * 128)?, &b.asum([3, 1, -1])),
            (-div(&x4 * (xi * 3 - 1) * &d9, &d1 * &d1 * &d5 * 64)?, &b.asum([2, -2, 0])),
        ],
    );
    let mut pending = vec![(p.clone(), p.clone(), pp)];
    let ca = (-(xi) + 1) * &lam1 + &eta * (xi - &eta - 1);
    let cn = &eta * (xi - &eta) / 2;
    for i in -6..=6 {
        let v = comb(n, f, &[(xi - &eta, &p), (ca.clone(), &b.a(i)), (cn.clone(), &b.a(i + 1)), (cn.clone(), &b.a(i - 1))]);
        pending.push((p.clone(), b.a(i), v));
        for j in i..i + 6 {
            let sym = comb(n, f, &[(eta.clone(), &b.a(i)), (eta.clone(), &b.a(j))]);
            let v = match j - i {
                0 => b.a(i),
                1 | 5 => comb(n, f, &[(f.one(), &p), (f.one(), &sym)]),
                2 | 4 => comb(n, f, &[(f.one(), &r2(i)), (f.one(), &sym)]),
                _ => comb(n, f, &[(f.one(), &r3(i)?), (f.one(), &sym)]),
            };
            pending.push((b.a(i), b.a(j), v));
        }
    }
    for (x, y, v) in pending {
        b.rule(x, y, v);
    }
    b.solve()
}

/// The periodic quotient of Z(2, ½) with a_{i+m} = a_i, on â₀..â_{m−1}, p̂₁..p̂_{⌊m/2⌋}.
pub fn z_periodic(f: Field, m: i64) -> Result<Algebra> {
    let h = m / 2;
    let pnames: Vec<String> = (1..=h).map(|k| format!("p{k}")).collect();
    let prefs: Vec<&str> = pnames.iter().map(String::as_str).collect();
    let mut b = TableBuilder::new(f, &prefs, 0, m - 1, Expansion::Periodic(m));
    let n = b.dim();
    let pk = |b: &TableBuilder, k: i64| -> Vector {
        let r = k.rem_euclid(m);
        let r = r.min(m - r);
        if r == 0 {
            b.zero()
        } else {
            b.v(&format!("p{r}"))
        }
    };
    let half = f.frac(1, 2)?;
    for i in 0..m {
        for j in i..m {
            let v = comb(n, f, &[(f.one(), &pk(&b, i - j)), (half.clone(), &b.a(i)), (half.clone(), &b.a(j))]);
            b.rule(b.a(i), b.a(j), v);
        }
        for j in 1..=h {
            let v = comb(
                n,
                f,
                &[(f.frac(3, 2)?, &pk(&b, j)), (f.frac(-3, 4)?, &b.a(i)), (f.frac(3, 8)?, &b.a(i - j)), (f.frac(3, 8)?, &b.a(i + j))],
            );
            b.rule(b.a(i), pk(&b, j), v);
        }
    }
    for i in 1..=h {
        for j in i..=h {
            let v = comb(
                n,
                f,
                &[
                    (f.frac(3, 4)?, &pk(&b, i)),
                    (f.frac(3, 4)?, &pk(&b, j)),
                    (f.frac(-3, 8)?, &pk(&b, i + j)),
                    (f.frac(-3, 8)?, &pk(&b, i - j)),
                ],
            );
            b.rule(pk(&b, i), pk(&b, j), v);
        }
    }
    b.solve()
}
