//! Double-double complex arithmetic, about 32 significant digits, for
//! series whose terms cancel heavily.

use std::ops::{Add, Div, Mul, Sub};

use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd { hi: s, lo: b - (s - a) }
}

impl Dd {
    pub(crate) fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub(crate) fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        quick_two_sum(s, e + self.lo + o.lo)
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        self + o.neg()
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        quick_two_sum(p, e + self.hi * o.lo + self.lo * o.hi)
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self - o * Dd::from_f64(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * Dd::from_f64(q2);
        let q3 = r.hi / o.hi;
        let q = quick_two_sum(q1, q2);
        q + Dd::from_f64(q3)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct CDd {
    re: Dd,
    im: Dd,
}

impl CDd {
    pub(crate) fn from_c64(z: C64) -> CDd {
        CDd { re: Dd::from_f64(z.re), im: Dd::from_f64(z.im) }
    }

    pub(crate) fn to_c64(self) -> C64 {
        C64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub(crate) fn add_f64(self, x: f64) -> CDd {
        CDd { re: self.re + Dd::from_f64(x), im: self.im }
    }
}

impl Add for CDd {
    type Output = CDd;
    fn add(self, o: CDd) -> CDd {
        CDd { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Mul for CDd {
    type Output = CDd;
    fn mul(self, o: CDd) -> CDd {
        CDd { re: self.re * o.re - self.im * o.im, im: self.re * o.im + self.im * o.re }
    }
}

impl Div for CDd {
    type Output = CDd;
    fn div(self, o: CDd) -> CDd {
        let den = o.re * o.re + o.im * o.im;
        let num = self * CDd { re: o.re, im: o.im.neg() };
        CDd { re: num.re / den, im: num.im / den }
    }
}
