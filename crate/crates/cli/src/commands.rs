use anyhow::{anyhow, bail, Result};
use instanton_core::certificate::{Certificate, Check};
use instanton_core::cubocubic::{strata_dimension, trisecant_test, CuboCubicTensor, MapValue};
use instanton_core::experiments::run_experiment;
use instanton_core::involutions::{involution_apply, QuarticSystem};
use instanton_core::json::{self as js, View};
use instanton_core::nets::{
    composition_scalars, deform_family, is_in_f, line_in_net_quadric, monad_fiber, net_involution,
    solve_symmetry_psi, stabilizer_dimension, symmetry_defect_psi, symmetry_defect_psi_prime,
    DeformBlocks, Membership, PolarValue,
};
use instanton_core::poly::{GradedIdeal, HomogPoly};
use instanton_core::rng::rng_for;
use instanton_core::schwarz::{
    branch_points_from_fit, classify_triplet_locus, count_points_with_triplet_on_cubic,
    curve7_from_pencil, curve9_from_quadruple, pencil_triplet_profile, pencil_triplet_profile_scan,
    sections_of_f1_basis, triplet_ideal_of_cubic, triplet_lies_on_cubic, PencilEntry, SectionF1,
    TripletCount,
};
use instanton_core::{with_field, Field, FieldSpec, Matrix, PrimeField};
use serde_json::{json, Map, Value};

use crate::input::{load, load_list, resolve_field};
use crate::{Command, CuboCubicCmd, Globals, InvolutionCmd, NetCmd, SchwarzCmd};

const SAMPLING: FieldSpec = FieldSpec::Prime(instanton_core::field::SAMPLING_PRIME);
const SCAN: FieldSpec = FieldSpec::Prime(instanton_core::field::SCAN_PRIME);

/// Loaded arguments by name, in the order given.
struct Inputs(Vec<(&'static str, Value)>);

impl Inputs {
    fn new() -> Self {
        Inputs(Vec::new())
    }
    fn add(mut self, name: &'static str, v: Value) -> Self {
        self.0.push((name, v));
        self
    }
    fn get(&self, name: &str) -> &Value {
        &self
            .0
            .iter()
            .find(|(n, _)| *n == name)
            .expect("argument registered")
            .1
    }
    fn has(&self, name: &str) -> bool {
        self.0.iter().any(|(n, _)| *n == name)
    }
    fn values(&self) -> Vec<&Value> {
        self.0.iter().map(|(_, v)| v).collect()
    }
    fn to_json(&self) -> Value {
        Value::Object(
            self.0
                .iter()
                .map(|(n, v)| (n.to_string(), v.clone()))
                .collect::<Map<_, _>>(),
        )
    }
}

fn cert(op: &str, inputs: &Inputs, spec: FieldSpec, seed: u64) -> Certificate {
    Certificate::new(op, &inputs.to_json(), &spec, seed)
}

fn prime_field(spec: FieldSpec, what: &str) -> Result<PrimeField> {
    match spec {
        FieldSpec::Prime(p) => Ok(PrimeField::new(p)?),
        other => bail!("{what} needs a prime field, got {other}"),
    }
}

pub fn dispatch(g: &Globals, cmd: &Command) -> Result<Certificate> {
    match cmd {
        Command::Cubocubic(c) => cubocubic(g, c),
        Command::Net(c) => net(g, c),
        Command::Schwarz(c) => schwarz(g, c),
        Command::Involution(c) => involution(g, c),
        Command::Experiment { name, config } => experiment(g, name, config.as_deref()),
        Command::Convert { .. } => unreachable!("convert emits plain JSON"),
    }
}

fn experiment(g: &Globals, name: &str, config: Option<&str>) -> Result<Certificate> {
    let mut config = match config {
        Some(c) => load(c)?,
        None => json!({}),
    };
    if let Some(spec) = g.field {
        let spec: FieldSpec = spec.parse()?;
        let obj = config
            .as_object_mut()
            .ok_or_else(|| anyhow!("experiment config must be a JSON object"))?;
        obj.entry("p").or_insert(json!(
            prime_field(spec, "--field for experiments")?.modulus()
        ));
    }
    Ok(run_experiment(name, &config, g.seed)?)
}

pub fn convert(g: &Globals, input: &str, view: &str) -> Result<String> {
    let v = load(input)?;
    let spec = resolve_field(g.field, &[&v], SAMPLING)?;
    let out = with_field!(spec, f => {
        if v.get("gens").is_some() {
            js::ideal_to_json(&js::ideal_from_json(f, &v)?)
        } else {
            let view: View = view.parse()?;
            js::view_to_json(&js::view_from_json(f, &v)?, view)
        }
    });
    Ok(serde_json::to_string_pretty(&out)?)
}

fn map_value<F: Field>(f: F, m: &MapValue<Vec<F::Elem>>) -> Value {
    match m {
        MapValue::Point(p) => js::vec_to_json(f, p),
        MapValue::BaseLocus => json!("baseLocus"),
    }
}

fn cubocubic(g: &Globals, cmd: &CuboCubicCmd) -> Result<Certificate> {
    use CuboCubicCmd::*;
    let inputs = match cmd {
        Curve { t, prime } => Inputs::new()
            .add("tensor", load(&t.tensor)?)
            .add("prime", json!(prime)),
        Forward { t, y } => Inputs::new()
            .add("tensor", load(&t.tensor)?)
            .add("y", load(y)?),
        Inverse { t, z } => Inputs::new()
            .add("tensor", load(&t.tensor)?)
            .add("z", load(z)?),
        Roundtrip { tensor, samples } => {
            let i = Inputs::new().add("samples", json!(samples));
            match tensor {
                Some(t) => i.add("tensor", load(t)?),
                None => i,
            }
        }
        TriplePoint { t, p } => Inputs::new()
            .add("tensor", load(&t.tensor)?)
            .add("p", load(p)?),
        Trisecant { t, a, b } => Inputs::new()
            .add("tensor", load(&t.tensor)?)
            .add("a", load(a)?)
            .add("b", load(b)?),
        StrataDim { i } => Inputs::new().add("i", json!(i)),
    };
    let spec = resolve_field(g.field, &inputs.values(), SAMPLING)?;
    with_field!(spec, f => cubocubic_in(f, g.seed, cmd, &inputs))
}

fn cubocubic_in<F: Field>(
    f: F,
    seed: u64,
    cmd: &CuboCubicCmd,
    inputs: &Inputs,
) -> Result<Certificate> {
    use CuboCubicCmd::*;
    let tensor = || js::view_from_json(f, inputs.get("tensor"));
    let point = |name: &str| js::point_from_json(f, inputs.get(name), 4);
    let spec = f.spec();
    let name = match cmd {
        Curve { .. } => "cubocubic curve",
        Forward { .. } => "cubocubic forward",
        Inverse { .. } => "cubocubic inverse",
        Roundtrip { .. } => "cubocubic roundtrip",
        TriplePoint { .. } => "cubocubic triple-point",
        Trisecant { .. } => "cubocubic trisecant",
        StrataDim { .. } => "cubocubic strata-dim",
    };
    let mut c = cert(name, inputs, spec, seed);
    let result = match cmd {
        Curve { prime, .. } => {
            let t = tensor()?;
            let ideal = if *prime {
                t.curve_ideal_y_prime()?
            } else {
                t.curve_ideal_y()?
            };
            let fit = ideal.hilbert_poly_fit(3, 7)?.pair();
            c.push(Check::equal(
                "Hilbert fit on degrees 3..7",
                Some((6, -2)),
                fit,
            ));
            json!({"ideal": js::ideal_to_json(&ideal), "hilbertFit": fit, "cubics": ideal.graded_dim(3)})
        }
        Forward { .. } => map_value(f, &tensor()?.forward_map(&point("y")?)?),
        Inverse { .. } => map_value(f, &tensor()?.inverse_map(&point("z")?)?),
        Roundtrip { samples, .. } => {
            let mut rng = rng_for(seed, "cubocubic roundtrip", 0);
            let t = if inputs.has("tensor") {
                tensor()?
            } else {
                CuboCubicTensor::random(f, &mut rng)
            };
            let (frac, compared) = t.check_birational_inverse(*samples, &mut rng)?;
            c.push(Check::equal("pass fraction", 1.0, frac));
            json!({"tensor": js::tensor_to_json(&t), "compared": compared, "passFraction": frac})
        }
        TriplePoint { .. } => json!(tensor()?.has_triple_point_at(&point("p")?)?),
        Trisecant { .. } => {
            let ideal = tensor()?.curve_ideal_y()?;
            let r = trisecant_test(&ideal, &point("a")?, &point("b")?)?;
            json!({"outcome": format!("{r:?}"), "trisecant": r.is_trisecant()})
        }
        StrataDim { i } => match i {
            Some(i) => json!(strata_dimension(*i)?),
            None => {
                let dims = (1..=4)
                    .map(strata_dimension)
                    .collect::<instanton_core::Result<Vec<_>>>()?;
                c.push(Check::equal(
                    "dimensions for i = 1..4",
                    [43, 43, 43, 44],
                    &dims,
                ));
                json!(dims)
            }
        },
    };
    Ok(c.with_result(result))
}

fn parse_net<F: Field>(f: F, v: &Value) -> Result<Vec<Matrix<F>>> {
    let list = v.get("quadrics").unwrap_or(v);
    let ms = list
        .as_array()
        .ok_or_else(|| anyhow!("a net is a list of three symmetric matrices"))?
        .iter()
        .map(|m| js::matrix_from_json(f, m))
        .collect::<instanton_core::Result<Vec<_>>>()?;
    instanton_core::cubocubic::check_net(&ms)?;
    Ok(ms)
}

type Block<E> = Vec<Vec<Vec<E>>>;

fn parse_blocks<F: Field>(f: F, v: &Value) -> Result<DeformBlocks<F::Elem>> {
    let i = v
        .get("i")
        .and_then(Value::as_u64)
        .ok_or_else(|| anyhow!("blocks need an integer \"i\""))? as usize;
    let block = |key: &str| -> Result<Block<F::Elem>> {
        let rows = v
            .get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| anyhow!("blocks are missing {key:?}"))?;
        rows.iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| anyhow!("malformed block {key:?}"))?
                    .iter()
                    .map(|e| Ok(js::vec_from_json(f, e)?))
                    .collect()
            })
            .collect()
    };
    Ok(DeformBlocks {
        i,
        a: block("a")?,
        c: block("c")?,
        d: block("d")?,
    })
}

fn blocks_json<F: Field>(f: F, b: &DeformBlocks<F::Elem>) -> Value {
    let block = |x: &Block<F::Elem>| -> Value {
        x.iter()
            .map(|r| Value::Array(r.iter().map(|e| js::vec_to_json(f, e)).collect()))
            .collect()
    };
    json!({"i": b.i, "a": block(&b.a), "c": block(&b.c), "d": block(&b.d)})
}

fn membership_json(m: &Membership) -> Value {
    match m {
        Membership::Valid { i, j } => json!({"valid": true, "stratum": [i, j]}),
        Membership::Invalid(r) => json!({"valid": false, "reason": r.to_string()}),
    }
}

fn net(g: &Globals, cmd: &NetCmd) -> Result<Certificate> {
    use NetCmd::*;
    let inputs = match cmd {
        Check { triple } | Stabilizer { triple } => Inputs::new().add("triple", load(triple)?),
        SolvePsi { t } => Inputs::new().add("tensor", load(&t.tensor)?),
        Deform { a, blocks, i } => {
            let x = Inputs::new().add("a", load(a)?);
            match blocks {
                Some(b) => x.add("blocks", load(b)?),
                None => x.add("i", json!(i)),
            }
        }
        Monad { triple, xi } => Inputs::new()
            .add("triple", load(triple)?)
            .add("xi", load(xi)?),
        Involution { net, p } => Inputs::new().add("net", load(net)?).add("p", load(p)?),
        LineComplex { net, a, b } => Inputs::new()
            .add("net", load(net)?)
            .add("a", load(a)?)
            .add("b", load(b)?),
    };
    let spec = resolve_field(g.field, &inputs.values(), SAMPLING)?;
    with_field!(spec, f => net_in(f, g.seed, cmd, &inputs))
}

fn net_in<F: Field>(f: F, seed: u64, cmd: &NetCmd, inputs: &Inputs) -> Result<Certificate> {
    use NetCmd::*;
    let triple = || js::triple_from_json(f, inputs.get("triple"));
    let point = |name: &str| js::point_from_json(f, inputs.get(name), 4);
    let name = match cmd {
        Check { .. } => "net check",
        SolvePsi { .. } => "net solve-psi",
        Deform { .. } => "net deform",
        Stabilizer { .. } => "net stabilizer",
        Monad { .. } => "net monad",
        Involution { .. } => "net involution",
        LineComplex { .. } => "net line-complex",
    };
    let mut c = cert(name, inputs, f.spec(), seed);
    let defects_vanish = |t: &instanton_core::nets::NetTriple<F>| -> Result<(bool, bool)> {
        Ok((
            symmetry_defect_psi(&t.phi, &t.psi)?
                .iter()
                .all(|m| m.is_zero()),
            symmetry_defect_psi_prime(&t.phi, &t.psi_prime)?
                .iter()
                .all(|m| m.is_zero()),
        ))
    };
    let result = match cmd {
        Check { .. } => {
            let t = triple()?;
            let m = is_in_f(&t)?;
            let (d1, d2) = defects_vanish(&t)?;
            let scalars = composition_scalars(&t.psi, &t.psi_prime)?
                .map(|(l, m)| json!({"lambda": js::scalar_to_json(f, &l), "mu": js::scalar_to_json(f, &m)}));
            c.push(instanton_core::certificate::Check::new(
                "triple lies in F",
                true,
                m.is_valid(),
                m.is_valid(),
            ));
            json!({
                "membership": membership_json(&m),
                "psiDefectVanishes": d1,
                "psiPrimeDefectVanishes": d2,
                "compositionScalars": scalars,
            })
        }
        SolvePsi { .. } => {
            let t = js::view_from_json(f, inputs.get("tensor"))?;
            let basis = solve_symmetry_psi(&t);
            json!({"dimension": basis.len(), "basis": basis.iter().map(js::matrix_to_json).collect::<Vec<_>>()})
        }
        Deform { i, .. } => {
            let a = js::scalar_from_json(f, inputs.get("a"))?;
            let blocks = if inputs.has("blocks") {
                parse_blocks(f, inputs.get("blocks"))?
            } else {
                DeformBlocks::random(f, *i, &mut rng_for(seed, "net deform", 0))?
            };
            let t = deform_family(f, &blocks, &a)?;
            let (d1, d2) = defects_vanish(&t)?;
            c.push(instanton_core::certificate::Check::equal(
                "psi defect vanishes",
                true,
                d1,
            ));
            c.push(instanton_core::certificate::Check::equal(
                "psi' defect vanishes",
                true,
                d2,
            ));
            json!({
                "blocks": blocks_json(f, &blocks),
                "triple": js::triple_to_json(&t),
                "membership": membership_json(&is_in_f(&t)?),
            })
        }
        Stabilizer { .. } => {
            let d = stabilizer_dimension(&triple()?)?;
            c.push(instanton_core::certificate::Check::equal(
                "stabilizer dimension",
                1,
                d,
            ));
            json!(d)
        }
        Monad { .. } => {
            let t = triple()?;
            let m = monad_fiber(&t.phi, &t.psi, &point("xi")?)?;
            c.push(instanton_core::certificate::Check::equal(
                "fiber is a complex",
                true,
                m.complex_ok,
            ));
            json!({
                "rankPhi": m.rank_phi, "rankPsi": m.rank_psi,
                "middleRank": m.middle_rank, "complexOK": m.complex_ok,
            })
        }
        Involution { .. } => {
            let q = parse_net(f, inputs.get("net"))?;
            let p = point("p")?;
            match net_involution(&q, &p)? {
                PolarValue::Point(p1) => {
                    let back = net_involution(&q, &p1)?.point();
                    let involutive = back
                        .as_ref()
                        .map(|b| instanton_core::proj::proj_eq(f, b, &p));
                    if let Some(ok) = involutive {
                        c.push(instanton_core::certificate::Check::equal(
                            "image of the image is P",
                            true,
                            ok,
                        ));
                    }
                    json!({"image": js::vec_to_json(f, &p1), "involutive": involutive})
                }
                PolarValue::Indeterminate => json!({"image": "indeterminate"}),
            }
        }
        LineComplex { .. } => {
            let q = parse_net(f, inputs.get("net"))?;
            let d = line_in_net_quadric(&q, &point("a")?, &point("b")?)?;
            json!({"determinant": js::scalar_to_json(f, &d), "lineOnQuadric": f.is_zero(&d)})
        }
    };
    Ok(c.with_result(result))
}

/// A section from JSON, a basis index `1..10`, or `"random"`.
fn section<F: Field>(f: F, v: &Value, rng: &mut instanton_core::rng::Rng) -> Result<SectionF1<F>> {
    if v == "random" {
        return Ok(SectionF1::random(f, rng));
    }
    if let Some(k) = v.as_u64() {
        let basis = sections_of_f1_basis(f);
        let k = k as usize;
        if k == 0 || k > basis.len() {
            bail!("section index {k} outside 1..{}", basis.len());
        }
        return Ok(basis[k - 1].clone());
    }
    Ok(js::section_from_json(f, v)?)
}

fn count_json(c: &TripletCount) -> Value {
    match c {
        TripletCount::Finite(n) => json!(n),
        TripletCount::Infinite => json!("infinite"),
    }
}

fn profile_json<F: Field>(f: F, profile: &[PencilEntry<F::Elem>]) -> Value {
    profile
        .iter()
        .map(|e| {
            let t =
                e.t.as_ref()
                    .map_or(json!("infinity"), |t| js::scalar_to_json(f, t));
            json!({"t": t, "count": count_json(&e.count)})
        })
        .collect()
}

fn schwarz(g: &Globals, cmd: &SchwarzCmd) -> Result<Certificate> {
    use SchwarzCmd::*;
    let inputs = match cmd {
        Triplet { f, x } => {
            let i = Inputs::new().add("f", load(f)?);
            match x {
                Some(x) => i.add("X", load(x)?),
                None => i,
            }
        }
        Count { x, no_extension } => Inputs::new()
            .add("X", load(x)?)
            .add("extension", json!(!no_extension)),
        Classify { x } => Inputs::new().add("X", load(x)?),
        Sections => Inputs::new(),
        Curve7 { s1, s2 } => Inputs::new().add("s1", load(s1)?).add("s2", load(s2)?),
        Curve9 { s } => Inputs::new().add("s", load_list(s)?),
        Pencil { x0, x1, scan } => Inputs::new()
            .add("x0", load(x0)?)
            .add("x1", load(x1)?)
            .add("scan", json!(scan)),
    };
    let spec = resolve_field(g.field, &inputs.values(), SCAN)?;
    match cmd {
        Count { .. } | Classify { .. } => {
            schwarz_scan(prime_field(spec, "exhaustive scans")?, g.seed, cmd, &inputs)
        }
        Pencil { scan: true, .. } => {
            schwarz_scan(prime_field(spec, "pencil scans")?, g.seed, cmd, &inputs)
        }
        _ => with_field!(spec, f => schwarz_in(f, g.seed, cmd, &inputs)),
    }
}

fn schwarz_scan(
    f: PrimeField,
    seed: u64,
    cmd: &SchwarzCmd,
    inputs: &Inputs,
) -> Result<Certificate> {
    use SchwarzCmd::*;
    let mut rng = rng_for(seed, "schwarz", 0);
    let (name, result) = match cmd {
        Count { no_extension, .. } => {
            let x = js::cubic_from_json(f, inputs.get("X"))?;
            (
                "schwarz count",
                json!(count_points_with_triplet_on_cubic(&x, !no_extension)?),
            )
        }
        Classify { .. } => {
            let x = js::cubic_from_json(f, inputs.get("X"))?;
            (
                "schwarz classify",
                json!(format!("{:?}", classify_triplet_locus(&x, &mut rng)?)),
            )
        }
        Pencil { .. } => {
            let x0 = js::cubic_from_json(f, inputs.get("x0"))?;
            let x1 = js::cubic_from_json(f, inputs.get("x1"))?;
            (
                "schwarz pencil",
                profile_json(f, &pencil_triplet_profile_scan(&x0, &x1)?),
            )
        }
        _ => unreachable!("only scan commands"),
    };
    let mut c = cert(name, inputs, f.spec(), seed);
    if let Pencil { .. } = cmd {
        push_pencil_check(&mut c, &result);
    }
    Ok(c.with_result(result))
}

fn push_pencil_check(c: &mut Certificate, profile: &Value) {
    let ones = profile
        .as_array()
        .map_or(0, |p| p.iter().filter(|e| e["count"] == json!(1)).count());
    c.push(Check::new(
        "members with one triplet",
        "<= 6",
        ones,
        ones <= 6,
    ));
}

fn schwarz_in<F: Field>(f: F, seed: u64, cmd: &SchwarzCmd, inputs: &Inputs) -> Result<Certificate> {
    use SchwarzCmd::*;
    let name = match cmd {
        Triplet { .. } => "schwarz triplet",
        Sections => "schwarz sections",
        Curve7 { .. } => "schwarz curve7",
        Curve9 { .. } => "schwarz curve9",
        Pencil { .. } => "schwarz pencil",
        Count { .. } | Classify { .. } => unreachable!("scan commands"),
    };
    let mut c = cert(name, inputs, f.spec(), seed);
    let result = match cmd {
        Triplet { .. } => {
            let bf = js::binary_form_from_json(f, inputs.get("f"))?;
            let ideal = triplet_ideal_of_cubic(&bf)?;
            let on = if inputs.has("X") {
                Some(triplet_lies_on_cubic(
                    &bf,
                    &js::cubic_from_json(f, inputs.get("X"))?,
                )?)
            } else {
                None
            };
            json!({"ideal": js::ideal_to_json(&ideal), "liesOnCubic": on})
        }
        Sections => {
            let basis = sections_of_f1_basis(f);
            c.push(Check::equal("dimension", 10, basis.len()));
            Value::Array(basis.iter().map(js::section_to_json).collect())
        }
        Curve7 { .. } => {
            let mut rng = rng_for(seed, "schwarz sections", 0);
            let s1 = section(f, inputs.get("s1"), &mut rng)?;
            let s2 = section(f, inputs.get("s2"), &mut rng)?;
            let ideal = curve7_from_pencil(&s1, &s2)?;
            let fit = ideal.hilbert_poly_fit(4, 8)?;
            c.push(Check::equal(
                "quartic piece dimension",
                8,
                ideal.graded_dim(4),
            ));
            c.push(Check::equal(
                "Hilbert fit on degrees 4..8",
                Some((7, -1)),
                fit.pair(),
            ));
            json!({
                "ideal": js::ideal_to_json(&ideal),
                "hilbertFit": fit.pair(),
                "branchPoints": branch_points_from_fit(&fit),
            })
        }
        Curve9 { .. } => {
            let list = inputs
                .get("s")
                .as_array()
                .cloned()
                .or_else(|| (inputs.get("s") == "random").then(|| vec![json!("random"); 4]))
                .filter(|l| l.len() == 4)
                .ok_or_else(|| anyhow!("--s needs four sections"))?;
            let mut rng = rng_for(seed, "schwarz sections", 0);
            let s: Vec<_> = list
                .iter()
                .map(|v| section(f, v, &mut rng))
                .collect::<Result<_>>()?;
            let s: [SectionF1<F>; 4] = s.try_into().map_err(|_| anyhow!("four sections"))?;
            let curve = curve9_from_quadruple(&s)?;
            let fit = curve.ideal.hilbert_poly_fit(6, 10)?.pair();
            c.push(Check::equal(
                "quartics through the curve",
                4,
                curve.quartics.len(),
            ));
            c.push(Check::equal(
                "Hilbert fit on degrees 6..10",
                Some((9, -5)),
                fit,
            ));
            json!({
                "quartics": curve.quartics.iter().map(js::poly_to_json).collect::<Vec<_>>(),
                "ideal": js::ideal_to_json(&curve.ideal),
                "hilbertFit": fit,
                "sampledPoints": curve.sampled_points,
            })
        }
        Pencil { .. } => {
            let x0 = js::cubic_from_json(f, inputs.get("x0"))?;
            let x1 = js::cubic_from_json(f, inputs.get("x1"))?;
            let profile = profile_json(
                f,
                &pencil_triplet_profile(&x0, &x1, &mut rng_for(seed, "schwarz", 0))?,
            );
            push_pencil_check(&mut c, &profile);
            profile
        }
        Count { .. } | Classify { .. } => unreachable!("scan commands"),
    };
    Ok(c.with_result(result))
}

/// Basis of the quartic piece of `ideal`.
fn quartic_piece<F: Field>(f: F, ideal: &GradedIdeal<F>) -> Result<Vec<HomogPoly<F>>> {
    let (m, pivots) = ideal.graded_basis(4);
    (0..pivots.len())
        .map(|k| Ok(HomogPoly::from_coeffs(f, 4, 4, m.row(k))?))
        .collect()
}

fn involution(g: &Globals, cmd: &InvolutionCmd) -> Result<Certificate> {
    match cmd {
        InvolutionCmd::Apply { curve, p } => {
            let inputs = Inputs::new().add("curve", load(curve)?).add("p", load(p)?);
            let spec = resolve_field(g.field, &inputs.values(), SCAN)?;
            with_field!(spec, f => {
                let ideal = js::ideal_from_json(f, inputs.get("curve"))?;
                if ideal.nvars() != 4 {
                    bail!("the curve must lie in P^3");
                }
                let sys = QuarticSystem::new(f, quartic_piece(f, &ideal)?)?;
                let p = js::point_from_json(f, inputs.get("p"), 4)?;
                let q = involution_apply(&sys, &p)?;
                let back = involution_apply(&sys, &q)?;
                let mut c = cert("involution apply", &inputs, spec, g.seed);
                c.push(Check::equal("sigma(sigma(P)) = P", true, instanton_core::proj::proj_eq(f, &back, &p)));
                Ok(c.with_result(json!({
                    "image": js::vec_to_json(f, &q),
                    "fixed": instanton_core::proj::proj_eq(f, &q, &p),
                })))
            })
        }
        InvolutionCmd::Verify { samples } => {
            let mut config = json!({"samples": samples});
            let spec = g
                .field
                .map(str::parse::<FieldSpec>)
                .transpose()?
                .unwrap_or(SCAN);
            config["p"] = json!(prime_field(spec, "involution verify")?.modulus());
            Ok(run_experiment("quartic-involution", &config, g.seed)?)
        }
    }
}
