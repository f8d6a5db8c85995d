//! Splitting-type recursion for monic polynomials of degree <= 3 over F_p[[u]].
//!
//! Coefficients are only known modulo `u^prec`. Every branch decision is taken on
//! digits that are actually known, so a determined answer holds for every lift of
//! the input; otherwise the caller gets [`Undetermined`].

use super::series::{self, Series};
use super::Undetermined;
use crate::field::PrimeField;
use crate::poly::{Degree, Poly};

/// Monic polynomial `y^d + c[d-1] y^(d-1) + ... + c[0]`, each `c[i]` known mod `u^prec`.
#[derive(Debug, Clone)]
pub(crate) struct LocalPoly {
    pub field: PrimeField,
    pub prec: usize,
    pub c: Vec<Series>,
}

pub(crate) type Factor = (u8, u8);

impl LocalPoly {
    fn degree(&self) -> usize {
        self.c.len()
    }

    fn residue(&self) -> Poly {
        let mut raw: Vec<u64> = self.c.iter().map(|s| s[0]).collect();
        raw.push(1);
        Poly::from_raw(self.field, raw)
    }

    fn eval(&self, y: &[u64]) -> Series {
        let f = self.field;
        let mut acc = series::constant(1, self.prec);
        for ci in self.c.iter().rev() {
            acc = series::add(f, &series::mul(f, &acc, y), ci);
        }
        acc
    }

    fn eval_derivative(&self, y: &[u64]) -> Series {
        let f = self.field;
        let d = self.degree();
        let mut acc = series::constant(d as u64 % f.modulus(), self.prec);
        for i in (1..d).rev() {
            let term = series::scale(f, &self.c[i], i as u64 % f.modulus());
            acc = series::add(f, &series::mul(f, &acc, y), &term);
        }
        acc
    }

    /// `f(y + s)` for a constant `s`.
    fn shift(&self, s: u64) -> LocalPoly {
        let f = self.field;
        let mut all = self.c.clone();
        all.push(series::constant(1, self.prec));
        let n = all.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = series::scale(f, &all[j + 1], s);
                all[j] = series::add(f, &all[j], &t);
            }
        }
        all.pop();
        LocalPoly {
            field: f,
            prec: self.prec,
            c: all,
        }
    }

    /// Newton iteration from a simple residue root.
    fn lift_root(&self, r: u64) -> Series {
        let f = self.field;
        let mut rho = series::constant(r, self.prec);
        let mut correct = 1usize;
        while correct < self.prec {
            let num = self.eval(&rho);
            let den = self.eval_derivative(&rho);
            let step = series::mul(f, &num, &series::inv_unit(f, &den));
            rho = series::sub(f, &rho, &step);
            correct *= 2;
        }
        rho
    }

    /// Quotient of `f` by `(y - rho)`, assuming `rho` is a root.
    fn deflate(&self, rho: &[u64]) -> LocalPoly {
        let f = self.field;
        let d = self.degree();
        let mut b = vec![series::constant(1, self.prec); d];
        for i in (1..d).rev() {
            b[i - 1] = series::add(f, &self.c[i], &series::mul(f, rho, &b[i]));
        }
        b.pop();
        LocalPoly {
            field: f,
            prec: self.prec,
            c: b,
        }
    }
}

pub(crate) fn classify(poly: &LocalPoly, out: &mut Vec<Factor>) -> Result<(), Undetermined> {
    let d = poly.degree();
    match d {
        0 => return Ok(()),
        1 => {
            out.push((1, 1));
            return Ok(());
        }
        _ => {}
    }
    if poly.prec == 0 {
        return Err(Undetermined);
    }
    let f = poly.field;
    let residue = poly.residue();
    let g = residue
        .gcd(&residue.derivative())
        .expect("residue is monic");
    match g.degree() {
        Degree::Finite(0) => {
            let roots = residue.count_roots_in_field().expect("residue is monic");
            match (d, roots) {
                (2, 2) => out.extend([(1, 1), (1, 1)]),
                (2, _) => out.push((1, 2)),
                (3, 3) => out.extend([(1, 1), (1, 1), (1, 1)]),
                (3, 1) => out.extend([(1, 1), (1, 2)]),
                (3, _) => out.push((1, 3)),
                _ => unreachable!("degree is at most 3"),
            }
            Ok(())
        }
        Degree::Finite(k) if k + 1 == d => {
            // residue = (y - s)^d
            let s = f.mul(
                f.neg(poly.c[d - 1][0]),
                f.inv(d as u64 % f.modulus()),
            );
            newton_step(&poly.shift(s), out)
        }
        Degree::Finite(1) => {
            // residue = (y - s)^2 (y - r)
            let s = f.neg(g.raw(0));
            let (simple, _) = residue
                .divrem(&g.mul(&g).expect("same field"))
                .expect("g is nonzero");
            let r = f.neg(simple.monic().raw(0));
            debug_assert_ne!(r, s);
            let rho = poly.lift_root(r);
            out.push((1, 1));
            classify(&poly.deflate(&rho), out)
        }
        _ => unreachable!("degree is at most 3"),
    }
}

#[derive(Debug, Clone, Copy)]
struct Point {
    x: usize,
    y: usize,
    known: bool,
}

/// Lower convex hull, left to right, with collinear interior points dropped.
pub(crate) fn lower_hull(points: &[(usize, usize)]) -> Vec<usize> {
    let mut hull: Vec<usize> = Vec::new();
    for (idx, &(x, y)) in points.iter().enumerate() {
        while hull.len() >= 2 {
            let (x1, y1) = points[hull[hull.len() - 2]];
            let (x2, y2) = points[hull[hull.len() - 1]];
            // drop the middle point unless it lies strictly below the chord
            let cross = (x2 as i64 - x1 as i64) * (y as i64 - y1 as i64)
                - (y2 as i64 - y1 as i64) * (x as i64 - x1 as i64);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(idx);
    }
    hull
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Residue is `y^d`: read the Newton polygon, or rescale along the smallest slope.
fn newton_step(poly: &LocalPoly, out: &mut Vec<Factor>) -> Result<(), Undetermined> {
    let d = poly.degree();
    let prec = poly.prec;
    let mut pts: Vec<Point> = poly
        .c
        .iter()
        .enumerate()
        .map(|(i, s)| match series::valuation(s) {
            Some(v) => Point { x: i, y: v, known: true },
            None => Point { x: i, y: prec, known: false },
        })
        .collect();
    pts.push(Point { x: d, y: 0, known: true });

    let coords: Vec<(usize, usize)> = pts.iter().map(|p| (p.x, p.y)).collect();
    let hull: Vec<Point> = lower_hull(&coords).into_iter().map(|i| pts[i]).collect();

    if hull.iter().skip(1).any(|p| !p.known) {
        return Err(Undetermined);
    }
    if !hull[0].known && hull[1].x != 1 {
        // the leftmost segment's shape depends on the unknown constant term
        return Err(Undetermined);
    }

    let mut factors = Vec::new();
    let mut needs_rescale = false;
    for w in hull.windows(2) {
        let len = w[1].x - w[0].x;
        let drop = w[0].y - w[1].y;
        let g = gcd(drop, len);
        if g == 1 || !w[0].known {
            factors.push((len as u8, 1));
        } else {
            needs_rescale = true;
        }
    }
    if !needs_rescale {
        out.extend(factors);
        return Ok(());
    }

    let last = &hull[hull.len() - 2..];
    let (len, drop) = (last[1].x - last[0].x, last[0].y - last[1].y);
    if drop % len != 0 {
        return Err(Undetermined);
    }
    let lambda = drop / len;
    if prec <= d * lambda {
        return Err(Undetermined);
    }
    let new_prec = prec - d * lambda;
    let c = poly
        .c
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let k = lambda * (d - i);
            debug_assert!(s[..k].iter().all(|&x| x == 0));
            s[k..k + new_prec].to_vec()
        })
        .collect();
    classify(
        &LocalPoly {
            field: poly.field,
            prec: new_prec,
            c,
        },
        out,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hull_drops_collinear_points() {
        assert_eq!(lower_hull(&[(0, 2), (1, 1), (2, 0)]), vec![0, 2]);
        assert_eq!(lower_hull(&[(0, 3), (1, 1), (3, 0)]), vec![0, 1, 2]);
        assert_eq!(lower_hull(&[(0, 1), (1, 5), (2, 5), (3, 0)]), vec![0, 3]);
    }
}
