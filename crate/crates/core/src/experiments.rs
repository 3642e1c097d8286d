//! Named, seeded verification runs. Each returns a [`Certificate`] whose
//! checks encode the pass criteria.

use serde_json::{json, Value};

use crate::certificate::{Certificate, Check};
use crate::cubocubic::{strata_dimension, twisted_cubic_tensor, CuboCubicTensor, MapValue};
use crate::error::{Error, Result};
use crate::field::{
    Field, FieldSpec, Matrix, PrimeField, Rationals, SAMPLING_PRIME, SCAN_PRIME, SMALL_SCAN_PRIME,
};
use crate::involutions::{involution_apply, quartics_through_point, same_span, QuarticSystem};
use crate::nets::{
    deform_family, is_in_f, monad_fiber, net_involution, solve_symmetry_psi, stabilizer_dimension,
    symmetry_defect_psi, symmetry_defect_psi_prime, DeformBlocks, Membership, PolarValue,
};
use crate::poly::{BinaryForm, HomogPoly, LinearFormMatrix};
use crate::proj;
use crate::rng::{rng_for, Rng};
use crate::schwarz::{
    branch_points_from_fit, classify_triplet_locus, conic_with_tangent_line,
    count_points_with_triplet_on_cubic, curve7_from_pencil, curve9_from_quadruple,
    find_unique_triplet_cubic, pencil_triplet_profile, poncelet_cubic, random_ternary_cubic,
    CubicCorrespondence, Curve9, SectionF1, TripletCount, TripletLocus,
};

/// `(name, description)` of every experiment.
pub const EXPERIMENTS: &[(&str, &str)] = &[
    ("strata-dims", "dimensions of the rank strata"),
    ("roundtrip", "inverse after forward map on random tensors"),
    (
        "cubo-cubic-involution",
        "the cubo-cubic map of a net of quadrics is an involution",
    ),
    (
        "curve-invariants",
        "Hilbert polynomial of the base curve of random tensors",
    ),
    ("deformation", "degeneration family: symmetry and strata"),
    ("psi-uniqueness", "dimension of the space of symmetric psi"),
    ("stabilizer", "stabilizer dimension on valid triples"),
    ("monad", "fiberwise complex and middle rank"),
    ("triplet-counts", "triplet counts and special cubics"),
    ("curve7", "degree 7 genus 2 curves from pencils of sections"),
    ("curve9", "degree 9 genus 6 curves from four sections"),
    ("hurwitz", "branch points of pencils of cubics"),
    (
        "quartic-involution",
        "residual involution of quartics through a (9,6) curve",
    ),
    ("polarity", "polarity involution of a net of quadrics"),
];

struct Ctx<'a> {
    name: &'a str,
    seed: u64,
    config: &'a Value,
}

impl Ctx<'_> {
    fn usize(&self, key: &str, default: usize) -> Result<usize> {
        match self.config.get(key) {
            None => Ok(default),
            Some(v) => v.as_u64().map(|x| x as usize).ok_or_else(|| {
                Error::Parse(format!("config key {key:?} must be a nonnegative integer"))
            }),
        }
    }

    fn prime(&self, default: u64) -> Result<PrimeField> {
        let p = match self.config.get("p") {
            None => default,
            Some(v) => v
                .as_u64()
                .ok_or_else(|| Error::Parse("config key \"p\" must be an integer".into()))?,
        };
        PrimeField::new(p)
    }

    fn rng(&self, index: u64) -> Rng {
        rng_for(self.seed, self.name, index)
    }

    fn certificate(&self, field: FieldSpec) -> Certificate {
        Certificate::new(
            &format!("experiment:{}", self.name),
            self.config,
            &field,
            self.seed,
        )
    }
}

pub fn experiment_names() -> Vec<&'static str> {
    EXPERIMENTS.iter().map(|(n, _)| *n).collect()
}

/// Runs the named experiment. `config` is a JSON object of optional
/// overrides (sample counts, the prime `p`).
pub fn run_experiment(name: &str, config: &Value, seed: u64) -> Result<Certificate> {
    if !config.is_object() && !config.is_null() {
        return Err(Error::Parse(
            "experiment config must be a JSON object".into(),
        ));
    }
    let ctx = Ctx { name, seed, config };
    match name {
        "strata-dims" => strata_dims(&ctx),
        "roundtrip" => roundtrip(&ctx),
        "cubo-cubic-involution" => cubo_cubic_involution(&ctx),
        "curve-invariants" => curve_invariants(&ctx),
        "deformation" => deformation(&ctx),
        "psi-uniqueness" => psi_uniqueness(&ctx),
        "stabilizer" => stabilizer(&ctx),
        "monad" => monad(&ctx),
        "triplet-counts" => triplet_counts(&ctx),
        "curve7" => curve7(&ctx),
        "curve9" => curve9(&ctx),
        "hurwitz" => hurwitz(&ctx),
        "quartic-involution" => quartic_involution(&ctx),
        "polarity" => polarity(&ctx),
        _ => Err(Error::UnknownExperiment(name.into())),
    }
}

fn strata_dims(ctx: &Ctx) -> Result<Certificate> {
    let mut cert = ctx.certificate(FieldSpec::Rationals);
    let dims = (1..=4).map(strata_dimension).collect::<Result<Vec<_>>>()?;
    cert.push(Check::equal(
        "dimensions for i = 1..4",
        [43, 43, 43, 44],
        &dims,
    ));
    Ok(cert.with_result(json!({ "dimensions": dims })))
}

fn roundtrip(ctx: &Ctx) -> Result<Certificate> {
    let f = ctx.prime(SAMPLING_PRIME)?;
    let n = ctx.usize("tensors", 20)?;
    let samples = ctx.usize("samples", 20)?;
    let mut good = 0.0;
    let mut compared = 0;
    for k in 0..n {
        let mut rng = ctx.rng(k as u64);
        let t = CuboCubicTensor::random(f, &mut rng);
        let (frac, c) = t.check_birational_inverse(samples, &mut rng)?;
        good += frac * c as f64;
        compared += c;
    }
    let frac = if compared == 0 {
        0.0
    } else {
        good / compared as f64
    };
    let mut cert = ctx.certificate(f.spec());
    cert.push(Check::equal("pass fraction", 1.0, frac));
    Ok(cert.with_result(json!({"tensors": n, "compared": compared, "passFraction": frac})))
}

fn random_net<R: rand::Rng + ?Sized>(f: PrimeField, rng: &mut R) -> Vec<Matrix<PrimeField>> {
    loop {
        let q: Vec<_> = (0..3)
            .map(|_| Matrix::random_symmetric(f, 4, rng))
            .collect();
        if crate::cubocubic::check_net(&q).is_ok() {
            return q;
        }
    }
}

fn cubo_cubic_involution(ctx: &Ctx) -> Result<Certificate> {
    let f = ctx.prime(SAMPLING_PRIME)?;
    let nets = ctx.usize("nets", 20)?;
    let samples = ctx.usize("samples", 100)?;
    let (mut compared, mut good, mut base) = (0usize, 0usize, 0usize);
    for k in 0..nets {
        let mut rng = ctx.rng(k as u64);
        let t = CuboCubicTensor::from_net(&random_net(f, &mut rng))?;
        for _ in 0..samples {
            let y = proj::random_point(f, &mut rng, 4);
            let MapValue::Point(z) = t.forward_map(&y)? else {
                base += 1;
                continue;
            };
            let MapValue::Point(back) = t.forward_map(&z)? else {
                base += 1;
                continue;
            };
            compared += 1;
            if proj::proj_eq(f, &back, &y) {
                good += 1;
            }
        }
    }
    let frac = good as f64 / compared.max(1) as f64;
    let mut cert = ctx.certificate(f.spec());
    cert.push(Check::equal(
        "involutive fraction on non-base samples",
        1.0,
        frac,
    ));
    cert.push(Check::at_least("compared samples", 1.0, compared as f64));
    Ok(cert.with_result(
        json!({"nets": nets, "compared": compared, "baseLocus": base, "fraction": frac}),
    ))
}

fn curve_invariants(ctx: &Ctx) -> Result<Certificate> {
    let f = ctx.prime(SAMPLING_PRIME)?;
    let n = ctx.usize("tensors", 20)?;
    let mut fits = Vec::new();
    for k in 0..n {
        let t = CuboCubicTensor::random(f, &mut ctx.rng(k as u64));
        let fit = match t.curve_ideal_y() {
            Ok(i) => i.hilbert_poly_fit(3, 7)?.pair(),
            Err(Error::DegenerateMinors) => None,
            Err(e) => return Err(e),
        };
        fits.push(fit);
    }
    let good = fits.iter().filter(|x| **x == Some((6, -2))).count();
    let need = (n * 18).div_ceil(20);
    let mut cert = ctx.certificate(f.spec());
    cert.push(Check::new(
        "tensors with fit (6, -2)",
        format!(">= {need}"),
        good,
        good >= need,
    ));
    Ok(cert.with_result(json!({"tensors": n, "fits": fits})))
}

fn deformation(ctx: &Ctx) -> Result<Certificate> {
    let f = ctx.prime(SAMPLING_PRIME)?;
    let n = ctx.usize("blocks", 20)?;
    let mut cert = ctx.certificate(f.spec());
    let mut per_i = Vec::new();
    for i in 1..=3usize {
        let mut good = 0;
        for k in 0..n {
            let mut rng = ctx.rng((i * 1000 + k) as u64);
            let b = DeformBlocks::random(f, i, &mut rng)?;
            let mut ok = true;
            for a in 0..4u64 {
                let t = deform_family(f, &b, &a)?;
                let sym = symmetry_defect_psi(&t.phi, &t.psi)?
                    .iter()
                    .all(|m| m.is_zero())
                    && symmetry_defect_psi_prime(&t.phi, &t.psi_prime)?
                        .iter()
                        .all(|m| m.is_zero());
                let want = if a == 0 { (i, 4 - i) } else { (4, 4) };
                ok &= sym && is_in_f(&t)?.stratum() == Some(want);
            }
            good += ok as usize;
        }
        cert.push(Check::equal(
            format!("block size {i}: all families correct"),
            n,
            good,
        ));
        per_i.push(good);
    }
    Ok(cert.with_result(json!({"blocks": n, "correct": per_i})))
}

fn random_twisted_cubic_tensor<R: rand::Rng + ?Sized>(
    f: PrimeField,
    rng: &mut R,
) -> Result<CuboCubicTensor<PrimeField>> {
    loop {
        let entries = (0..3)
            .map(|_| (0..2).map(|_| f.random_vec(rng, 4)).collect())
            .collect();
        let n = LinearFormMatrix::new(f, 4, entries)?;
        let h = proj::random_point(f, rng, 4);
        let d = Matrix::random_symmetric(f, 3, rng);
        match twisted_cubic_tensor(&n, &h, &d, true) {
            Ok(t) => return Ok(t),
            Err(Error::Degenerate(_)) => continue,
            Err(e) => return Err(e),
        }
    }
}

fn psi_uniqueness(ctx: &Ctx) -> Result<Certificate> {
    let f = ctx.prime(SAMPLING_PRIME)?;
    let n = ctx.usize("tensors", 20)?;
    let mut special = Vec::new();
    let mut generic = Vec::new();
    for k in 0..n {
        let t = random_twisted_cubic_tensor(f, &mut ctx.rng(k as u64))?;
        special.push(solve_symmetry_psi(&t).len());
        let r = CuboCubicTensor::random(f, &mut ctx.rng((n + k) as u64));
        generic.push(solve_symmetry_psi(&r).len());
    }
    let mut cert = ctx.certificate(f.spec());
    cert.push(Check::equal(
        "solution dimensions on special tensors",
        vec![1; n],
        &special,
    ));
    cert.push(Check::equal(
        "solution dimensions on random tensors",
        vec![0; n],
        &generic,
    ));
    Ok(cert.with_result(json!({"special": special, "random": generic})))
}

fn stabilizer(ctx: &Ctx) -> Result<Certificate> {
    let f = ctx.prime(SAMPLING_PRIME)?;
    let n = ctx.usize("triples", 20)?;
    let mut cert = ctx.certificate(f.spec());
    let mut dims4 = Vec::new();
    let mut dims3 = Vec::new();
    for k in 0..n {
        let mut rng = ctx.rng(k as u64);
        let i = k % 3 + 1;
        let b = DeformBlocks::random(f, i, &mut rng)?;
        let a = f.random_nonzero(&mut rng);
        let t = deform_family(f, &b, &a)?;
        if is_in_f(&t)?.stratum() != Some((4, 4)) {
            return Err(Error::Degenerate(
                "family member left the open stratum".into(),
            ));
        }
        dims4.push(stabilizer_dimension(&t)?);
        let b3 = DeformBlocks::random(f, 3, &mut rng)?;
        let t3 = deform_family(f, &b3, &0)?;
        dims3.push(stabilizer_dimension(&t3)?);
    }
    cert.push(Check::equal(
        "stabilizer dimensions in stratum 4",
        vec![1; n],
        &dims4,
    ));
    cert.push(Check::equal(
        "stabilizer dimensions in stratum 3",
        vec![1; n],
        &dims3,
    ));
    Ok(cert.with_result(json!({"stratum4": dims4, "stratum3": dims3})))
}

fn monad(ctx: &Ctx) -> Result<Certificate> {
    let f = ctx.prime(SAMPLING_PRIME)?;
    let n = ctx.usize("triples", 6)?;
    let samples = ctx.usize("samples", 100)?;
    let (mut total, mut complex_ok, mut rank2, mut broken, mut perturbed) = (0, 0, 0, 0, 0);
    let mut strata = Vec::new();
    for k in 0..n {
        let mut rng = ctx.rng(k as u64);
        let i = k % 3 + 1;
        let a = if k % 2 == 0 {
            f.random_nonzero(&mut rng)
        } else {
            0
        };
        let t = deform_family(f, &DeformBlocks::random(f, i, &mut rng)?, &a)?;
        let Membership::Valid { i, j } = is_in_f(&t)? else {
            return Err(Error::Degenerate("family member is not valid".into()));
        };
        strata.push((i, j));
        for _ in 0..samples {
            let xi = proj::random_point(f, &mut rng, 4);
            let m = monad_fiber(&t.phi, &t.psi, &xi)?;
            total += 1;
            complex_ok += m.complex_ok as usize;
            rank2 += (m.middle_rank == 2) as usize;
        }
        let off = loop {
            let off = t.psi.add(&Matrix::random(f, 4, 4, &mut rng))?;
            if symmetry_defect_psi(&t.phi, &off)?
                .iter()
                .any(|m| !m.is_zero())
            {
                break off;
            }
        };
        for _ in 0..10 {
            let xi = proj::random_point(f, &mut rng, 4);
            perturbed += 1;
            broken += (!monad_fiber(&t.phi, &off, &xi)?.complex_ok) as usize;
        }
    }
    let mut cert = ctx.certificate(f.spec());
    cert.push(Check::equal(
        "complex at every sampled fiber",
        total,
        complex_ok,
    ));
    cert.push(Check::at_least(
        "fraction with middle rank 2",
        0.95,
        rank2 as f64 / total.max(1) as f64,
    ));
    cert.push(Check::equal(
        "perturbed psi breaks the complex",
        perturbed,
        broken,
    ));
    Ok(cert.with_result(json!({
        "strata": strata, "fibers": total, "complexOk": complex_ok,
        "middleRank2": rank2, "perturbedBroken": broken,
    })))
}

fn nondegenerate_conic<R: rand::Rng + ?Sized>(
    f: PrimeField,
    rng: &mut R,
) -> Result<HomogPoly<PrimeField>> {
    loop {
        let c = f.random_vec(rng, 6);
        // (q0^2, q0q1, q0q2, q1^2, q1q2, q2^2) -> symmetric matrix times 2
        let m = Matrix::new(
            f,
            3,
            3,
            vec![
                f.mul(&2, &c[0]),
                c[1],
                c[2],
                c[1],
                f.mul(&2, &c[3]),
                c[4],
                c[2],
                c[4],
                f.mul(&2, &c[5]),
            ],
        )?;
        if !f.is_zero(&m.det()?) {
            return HomogPoly::from_coeffs(f, 3, 2, &c);
        }
    }
}

fn random_split_cubic<R: rand::Rng + ?Sized>(
    f: PrimeField,
    rng: &mut R,
) -> [BinaryForm<PrimeField>; 3] {
    loop {
        let ls = [(); 3].map(|_| {
            let v = proj::random_point(f, rng, 2);
            BinaryForm::new(f, v).expect("two coefficients")
        });
        let distinct =
            (0..3).all(|i| (i + 1..3).all(|j| !proj::proj_eq(f, ls[i].coeffs(), ls[j].coeffs())));
        if distinct {
            return ls;
        }
    }
}

fn triplet_counts(ctx: &Ctx) -> Result<Certificate> {
    let f = ctx.prime(SMALL_SCAN_PRIME)?;
    let n = ctx.usize("cubics", 50)?;
    let mut cert = ctx.certificate(f.spec());
    let mut counts = Vec::new();
    for k in 0..n {
        let x = random_ternary_cubic(f, &mut ctx.rng(k as u64));
        counts.push(count_points_with_triplet_on_cubic(&x, true)?);
    }
    let twos = counts.iter().filter(|&&c| c == 2).count();
    cert.push(Check::at_least(
        "fraction of random cubics with 2 triplets",
        0.8,
        twos as f64 / n.max(1) as f64,
    ));

    let mut rng = ctx.rng(1_000_000);
    let unique = find_unique_triplet_cubic(f, &mut rng, 2000)?;
    let unique_count = match &unique {
        Some(x) => Some(count_points_with_triplet_on_cubic(x, true)?),
        None => None,
    };
    cert.push(Check::equal(
        "searched unique-triplet cubic",
        Some(1),
        unique_count,
    ));

    let k = nondegenerate_conic(f, &mut rng)?;
    let l = BinaryForm::new(f, proj::random_point(f, &mut rng, 2))?;
    let tangent = conic_with_tangent_line(&k, &l)?;
    let tangent_class = classify_triplet_locus(&tangent, &mut rng)?;
    cert.push(Check::equal(
        "conic with tangent line",
        format!("{:?}", TripletLocus::InfiniteOfDegree(2)),
        format!("{tangent_class:?}"),
    ));

    let poncelet = loop {
        let f0 = random_split_cubic(f, &mut rng);
        let f1 = random_split_cubic(f, &mut rng);
        let m = HomogPoly::linear(f, &proj::random_point(f, &mut rng, 3));
        match poncelet_cubic(&f0, &f1, &m) {
            Ok((x, conic)) if conic_is_nondegenerate(&conic)? => break x,
            Ok(_) | Err(Error::Degenerate(_)) => continue,
            Err(e) => return Err(e),
        }
    };
    let poncelet_class = classify_triplet_locus(&poncelet, &mut rng)?;
    cert.push(Check::equal(
        "Poncelet conic with a line",
        format!("{:?}", TripletLocus::InfiniteOfDegree(1)),
        format!("{poncelet_class:?}"),
    ));
    Ok(cert.with_result(json!({
        "counts": counts,
        "uniqueTripletCubic": unique.as_ref().map(crate::json::poly_to_json),
        "tangentClass": format!("{tangent_class:?}"),
        "ponceletClass": format!("{poncelet_class:?}"),
    })))
}

fn conic_is_nondegenerate(c: &HomogPoly<PrimeField>) -> Result<bool> {
    let f = c.field();
    let co = |e: [u32; 3]| c.coeff(&e);
    let m = Matrix::new(
        f,
        3,
        3,
        vec![
            f.mul(&2, &co([2, 0, 0])),
            co([1, 1, 0]),
            co([1, 0, 1]),
            co([1, 1, 0]),
            f.mul(&2, &co([0, 2, 0])),
            co([0, 1, 1]),
            co([1, 0, 1]),
            co([0, 1, 1]),
            f.mul(&2, &co([0, 0, 2])),
        ],
    )?;
    Ok(!f.is_zero(&m.det()?))
}

fn curve7(ctx: &Ctx) -> Result<Certificate> {
    let f = ctx.prime(SAMPLING_PRIME)?;
    let n = ctx.usize("pencils", 10)?;
    let mut results = Vec::new();
    for k in 0..n {
        let mut rng = ctx.rng(k as u64);
        let s1 = SectionF1::random(f, &mut rng);
        let s2 = SectionF1::random(f, &mut rng);
        let i = curve7_from_pencil(&s1, &s2)?;
        results.push((i.graded_dim(4), i.hilbert_poly_fit(4, 8)?.pair()));
    }
    let good = results.iter().filter(|r| **r == (8, Some((7, -1)))).count();
    let need = (n * 9).div_ceil(10);
    let mut cert = ctx.certificate(f.spec());
    cert.push(Check::new(
        "pencils with quartic dimension 8 and fit (7, -1)",
        format!(">= {need}"),
        good,
        good >= need,
    ));
    Ok(cert.with_result(json!({"pencils": n, "results": results})))
}

fn curve9_summary(c: &Result<Curve9<PrimeField>>) -> Result<Value> {
    Ok(match c {
        Ok(c) => json!({
            "points": c.sampled_points,
            "quartics": c.quartics.len(),
            "fit": c.ideal.hilbert_poly_fit(6, 10)?.pair(),
            "dim6": c.ideal.graded_dim(6),
        }),
        Err(Error::Degenerate(msg)) => json!({"degenerate": msg}),
        Err(e) => return Err(e.clone()),
    })
}

fn curve9(ctx: &Ctx) -> Result<Certificate> {
    let f = ctx.prime(SCAN_PRIME)?;
    let n = ctx.usize("quadruples", 5)?;
    let mut results = Vec::new();
    let mut good = 0;
    for k in 0..n {
        let mut rng = ctx.rng(k as u64);
        let s = [(); 4].map(|_| SectionF1::random(f, &mut rng));
        let summary = curve9_summary(&curve9_from_quadruple(&s))?;
        if summary["quartics"] == json!(4)
            && summary["fit"] == json!([9, -5])
            && summary["dim6"] == json!(35)
        {
            good += 1;
        }
        results.push(summary);
    }
    let need = (n * 4).div_ceil(5);
    let mut cert = ctx.certificate(f.spec());
    cert.push(Check::new(
        "quadruples with 4 quartics, fit (9, -5) and degree-6 dimension 35",
        format!(">= {need}"),
        good,
        good >= need,
    ));
    Ok(cert.with_result(json!({"quadruples": n, "results": results})))
}

fn hurwitz(ctx: &Ctx) -> Result<Certificate> {
    let f = ctx.prime(SCAN_PRIME)?;
    let n = ctx.usize("pencils", 5)?;
    let corr = CubicCorrespondence::new(f)?;
    let mut ones = Vec::new();
    let mut branch = Vec::new();
    let mut profiles = Vec::new();
    for k in 0..n {
        let mut rng = ctx.rng(k as u64);
        let x0 = random_ternary_cubic(f, &mut rng);
        let x1 = random_ternary_cubic(f, &mut rng);
        let profile = pencil_triplet_profile(&x0, &x1, &mut rng)?;
        let count = |c: TripletCount| profile.iter().filter(|e| e.count == c).count();
        ones.push(count(TripletCount::Finite(1)));
        profiles.push(json!({
            "one": count(TripletCount::Finite(1)),
            "two": count(TripletCount::Finite(2)),
            "zero": count(TripletCount::Finite(0)),
            "infinite": count(TripletCount::Infinite),
        }));
        let y = curve7_from_pencil(&corr.section_of_cubic(&x0)?, &corr.section_of_cubic(&x1)?)?;
        branch.push(branch_points_from_fit(&y.hilbert_poly_fit(4, 8)?));
    }
    let mut cert = ctx.certificate(f.spec());
    cert.push(Check::new(
        "members with one triplet, per pencil",
        "each <= 6",
        &ones,
        ones.iter().all(|&c| c <= 6),
    ));
    cert.push(Check::equal(
        "branch points from the genus of the pencil curve",
        vec![Some(6); n],
        &branch,
    ));
    Ok(cert.with_result(json!({"profiles": profiles, "branchPoints": branch})))
}

fn quartic_involution(ctx: &Ctx) -> Result<Certificate> {
    let f = ctx.prime(SCAN_PRIME)?;
    let samples = ctx.usize("samples", 20)?;
    let mut curve = None;
    for k in 0..10u64 {
        let mut rng = ctx.rng(k);
        let s = [(); 4].map(|_| SectionF1::random(f, &mut rng));
        match curve9_from_quadruple(&s) {
            Ok(c) => {
                curve = Some(c);
                break;
            }
            Err(Error::Degenerate(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    let curve = curve.ok_or_else(|| Error::Degenerate("no (9,6) curve found".into()))?;
    let sys = QuarticSystem::new(f, curve.quartics.clone())?;
    let (mut on_curve, mut degenerate, mut fixed, mut good, mut bad, mut spans) =
        (0, 0, 0, 0, 0, 0);
    let mut rng = ctx.rng(1000);
    for _ in 0..samples {
        let p = proj::random_point(f, &mut rng, 4);
        let q = match involution_apply(&sys, &p) {
            Ok(q) => q,
            Err(Error::OnCurve) => {
                on_curve += 1;
                continue;
            }
            Err(Error::Degenerate(_)) => {
                degenerate += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        if proj::proj_eq(f, &q, &p) {
            fixed += 1;
            continue;
        }
        match involution_apply(&sys, &q) {
            Ok(back) if proj::proj_eq(f, &back, &p) => good += 1,
            Ok(_) | Err(Error::Degenerate(_)) => bad += 1,
            Err(e) => return Err(e),
        }
        let a = quartics_through_point(&sys, &p)?;
        let b = quartics_through_point(&sys, &q)?;
        spans += same_span(f, &a, &b) as usize;
    }
    let considered = good + bad;
    let mut cert = ctx.certificate(f.spec());
    cert.push(Check::at_least(
        "fraction with sigma(sigma(P)) = P",
        0.9,
        good as f64 / considered.max(1) as f64,
    ));
    cert.push(Check::equal(
        "fibers share their quartic subspace",
        good + bad,
        spans,
    ));
    Ok(cert.with_result(json!({
        "curvePoints": curve.sampled_points,
        "samples": samples, "involutive": good, "failed": bad,
        "onCurve": on_curve, "degenerate": degenerate, "fixedPoints": fixed,
    })))
}

fn polarity(ctx: &Ctx) -> Result<Certificate> {
    let q = Rationals;
    let samples = ctx.usize("samples", 1000)?;
    let net: Vec<Matrix<Rationals>> = (0..3)
        .map(|k| {
            Matrix::diagonal(
                q,
                &(1..=4)
                    .map(|x: i64| q.from_i64(x.pow(k)))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let v = |xs: &[i64]| xs.iter().map(|&x| q.from_i64(x)).collect::<Vec<_>>();
    let mut cert = ctx.certificate(q.spec());
    let image = |p: &[i64], want: &[i64]| -> Result<Check> {
        let got = net_involution(&net, &v(p))?.point();
        let pass = got.as_ref().is_some_and(|g| proj::proj_eq(q, g, &v(want)));
        let shown = got.as_ref().map(|g| crate::json::vec_to_json(q, g));
        Ok(Check::new(
            format!("image of {p:?}"),
            crate::json::vec_to_json(q, &v(want)),
            shown,
            pass,
        ))
    };
    cert.push(image(&[1, 1, 1, 1], &[-1, 3, -3, 1])?);
    cert.push(image(&[-1, 3, -3, 1], &[1, 1, 1, 1])?);
    let t = CuboCubicTensor::from_net(&net)?;
    let mut rng = ctx.rng(0);
    // `defined` counts samples where both applications are determinate.
    let (mut defined, mut involutive, mut compared, mut agree) = (0, 0, 0, 0);
    for _ in 0..samples {
        let p = proj::random_point(q, &mut rng, 4);
        let PolarValue::Point(p1) = net_involution(&net, &p)? else {
            continue;
        };
        if let PolarValue::Point(p2) = net_involution(&net, &p1)? {
            defined += 1;
            involutive += proj::proj_eq(q, &p2, &p) as usize;
        }
        if let MapValue::Point(z) = t.forward_map(&p)? {
            compared += 1;
            agree += proj::proj_eq(q, &z, &p1) as usize;
        }
    }
    cert.push(Check::at_least(
        "involutive fraction",
        0.99,
        involutive as f64 / defined.max(1) as f64,
    ));
    cert.push(Check::equal(
        "agreement with the cubo-cubic map",
        compared,
        agree,
    ));
    Ok(cert.with_result(json!({
        "samples": samples, "defined": defined, "involutive": involutive,
        "compared": compared, "agree": agree,
    })))
}
