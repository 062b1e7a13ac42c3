use modjac::modsym::{build_space, decompose::decompose};
use modjac::periods::{big_period_matrix, small_period_matrix, BigPeriodMatrix};
use modjac::reconstruct::*;
use modjac::numeric::{CMat2, CNum, Ctx};
use modjac::exact::IntMat;
use num_bigint::BigInt;

fn transform(ctx: &Ctx, om: &BigPeriodMatrix, s: &IntMat) -> BigPeriodMatrix {
    // Omega' columns = Omega * S on the homology side: [O1'|O2'] = [O1|O2] S
    let col = |m: &CMat2, j: usize| -> [CNum; 2] {
        if j == 0 { [m.a.clone(), m.c.clone()] } else { [m.b.clone(), m.d.clone()] }
    };
    let cols: Vec<[CNum; 2]> = vec![col(&om.omega1,0), col(&om.omega1,1), col(&om.omega2,0), col(&om.omega2,1)];
    let mut newcols = Vec::new();
    for j in 0..4 {
        let mut acc = [CNum::zero(ctx), CNum::zero(ctx)];
        for i in 0..4 {
            let w = ctx.from_rational(&num_rational::BigRational::from(s.at(i, j).clone()));
            acc[0] = acc[0].add(&cols[i][0].mul_real(&w, ctx), ctx);
            acc[1] = acc[1].add(&cols[i][1].mul_real(&w, ctx), ctx);
        }
        newcols.push(acc);
    }
    BigPeriodMatrix {
        omega1: CMat2::from_cols(newcols[0].clone(), newcols[1].clone()),
        omega2: CMat2::from_cols(newcols[2].clone(), newcols[3].clone()),
        symplectic_transform: om.symplectic_transform.mul(s),
        polarization_content: om.polarization_content.clone(),
        fricke_sign: om.fricke_sign,
        error_bound: om.error_bound.clone(),
    }
}

fn main() {
    let s = build_space(63);
    let classes = decompose(&s);
    let (engine, omega) = big_period_matrix(&s, &classes[0], 160).unwrap();
    let ctx = engine.ctx();
    let hb = BigInt::from(10u64).pow(12);
    for (name, mat) in [
        ("identity", IntMat::identity(4)),
        ("S1", IntMat::from_i64_rows(&[vec![1,0,0,0],vec![0,1,0,0],vec![1,0,1,0],vec![0,0,0,1]])),
        ("S2", IntMat::from_i64_rows(&[vec![1,0,2,1],vec![0,1,1,0],vec![0,0,1,0],vec![0,0,0,1]])),
    ] {
        // check symplectic: S^T J S = J
        let j = modjac::exact::standard_j(2);
        assert_eq!(mat.transpose().mul(&j).mul(&mat), j, "not symplectic: {name}");
        let om = transform(ctx, &omega, &mat);
        let small = small_period_matrix(ctx, &om).unwrap();
        let ws = weierstrass_roots(ctx, &om, &small.z).unwrap();
        let f0 = monic_model(ctx, &ws, &hb);
        match leading_coefficient(ctx, &om, &ws, ProductConvention::OrderedFinite, &hb) {
            Ok((a, _)) => println!("{name}: F0 ok={} |a6| = {a}", f0.is_ok()),
            Err(_) => {
                // print raw numbers
                std::env::set_var("MODJAC_DEBUG_A6", "1");
                let _ = leading_coefficient(ctx, &om, &ws, ProductConvention::OrderedFinite, &hb);
                std::env::remove_var("MODJAC_DEBUG_A6");
                println!("{name}: F0 ok={} (a not rational)", f0.is_ok());
            }
        }
    }
}
