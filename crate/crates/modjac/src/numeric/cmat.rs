//! 2x2 complex matrices: all the dense linear algebra the genus-2 period
//! pipeline needs.

use super::{CNum, Ctx};

/// 2x2 complex matrix [[a, b], [c, d]].
#[derive(Clone, Debug)]
pub struct CMat2 {
    pub a: CNum,
    pub b: CNum,
    pub c: CNum,
    pub d: CNum,
}

impl CMat2 {
    pub fn new(a: CNum, b: CNum, c: CNum, d: CNum) -> Self {
        CMat2 { a, b, c, d }
    }

    pub fn identity(ctx: &Ctx) -> Self {
        CMat2::new(CNum::one(ctx), CNum::zero(ctx), CNum::zero(ctx), CNum::one(ctx))
    }

    /// Matrix with the given columns.
    pub fn from_cols(c0: [CNum; 2], c1: [CNum; 2]) -> Self {
        let [a, c] = c0;
        let [b, d] = c1;
        CMat2 { a, b, c, d }
    }

    pub fn det(&self, ctx: &Ctx) -> CNum {
        self.a.mul(&self.d, ctx).sub(&self.b.mul(&self.c, ctx), ctx)
    }

    pub fn inverse(&self, ctx: &Ctx) -> CMat2 {
        let det = self.det(ctx);
        let inv = det.recip(ctx);
        CMat2 {
            a: self.d.mul(&inv, ctx),
            b: self.b.mul(&inv, ctx).neg(),
            c: self.c.mul(&inv, ctx).neg(),
            d: self.a.mul(&inv, ctx),
        }
    }

    pub fn mul(&self, o: &CMat2, ctx: &Ctx) -> CMat2 {
        CMat2 {
            a: self.a.mul(&o.a, ctx).add(&self.b.mul(&o.c, ctx), ctx),
            b: self.a.mul(&o.b, ctx).add(&self.b.mul(&o.d, ctx), ctx),
            c: self.c.mul(&o.a, ctx).add(&self.d.mul(&o.c, ctx), ctx),
            d: self.c.mul(&o.b, ctx).add(&self.d.mul(&o.d, ctx), ctx),
        }
    }

    pub fn add(&self, o: &CMat2, ctx: &Ctx) -> CMat2 {
        CMat2 {
            a: self.a.add(&o.a, ctx),
            b: self.b.add(&o.b, ctx),
            c: self.c.add(&o.c, ctx),
            d: self.d.add(&o.d, ctx),
        }
    }

    pub fn sub(&self, o: &CMat2, ctx: &Ctx) -> CMat2 {
        CMat2 {
            a: self.a.sub(&o.a, ctx),
            b: self.b.sub(&o.b, ctx),
            c: self.c.sub(&o.c, ctx),
            d: self.d.sub(&o.d, ctx),
        }
    }

    pub fn transpose(&self) -> CMat2 {
        CMat2 { a: self.a.clone(), b: self.c.clone(), c: self.b.clone(), d: self.d.clone() }
    }

    pub fn scale(&self, s: &CNum, ctx: &Ctx) -> CMat2 {
        CMat2 {
            a: self.a.mul(s, ctx),
            b: self.b.mul(s, ctx),
            c: self.c.mul(s, ctx),
            d: self.d.mul(s, ctx),
        }
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[CNum; 2], ctx: &Ctx) -> [CNum; 2] {
        [
            self.a.mul(&v[0], ctx).add(&self.b.mul(&v[1], ctx), ctx),
            self.c.mul(&v[0], ctx).add(&self.d.mul(&v[1], ctx), ctx),
        ]
    }

    /// Row-vector-matrix product v^T * M.
    pub fn vec_mul(&self, v: &[CNum; 2], ctx: &Ctx) -> [CNum; 2] {
        [
            self.a.mul(&v[0], ctx).add(&self.c.mul(&v[1], ctx), ctx),
            self.b.mul(&v[0], ctx).add(&self.d.mul(&v[1], ctx), ctx),
        ]
    }

    /// Entrywise maximum of |entries of self - entries of other|.
    pub fn max_dist(&self, o: &CMat2, ctx: &Ctx) -> astro_float::BigFloat {
        let mut m = self.a.dist(&o.a, ctx);
        for (x, y) in [(&self.b, &o.b), (&self.c, &o.c), (&self.d, &o.d)] {
            let d = x.dist(y, ctx);
            if d.cmp(&m).is_some_and(|c| c > 0) {
                m = d;
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_mul() {
        let ctx = Ctx::new(128);
        let m = CMat2::new(
            CNum::from_f64(&ctx, 1.0, 2.0),
            CNum::from_f64(&ctx, -0.5, 0.25),
            CNum::from_f64(&ctx, 3.0, -1.0),
            CNum::from_f64(&ctx, 0.75, 4.0),
        );
        let inv = m.inverse(&ctx);
        let prod = m.mul(&inv, &ctx);
        let id = CMat2::identity(&ctx);
        assert!(prod.max_dist(&id, &ctx).cmp(&ctx.pow2(-100)).unwrap() < 0);
    }
}
