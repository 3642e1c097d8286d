//! JSON encodings of scalars, points, matrices, polynomials, ideals,
//! tensors, triples and sections.
//!
//! Scalars are strings in the field's own notation; integers are accepted
//! on input as a convenience.

use serde_json::{json, Map, Value};

use crate::cubocubic::CuboCubicTensor;
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, Matrix};
use crate::nets::NetTriple;
use crate::poly::{BinaryForm, GradedIdeal, HomogPoly, LinearFormMatrix};
use crate::schwarz::SectionF1;

fn bad(what: &str) -> Error {
    Error::Parse(format!("malformed {what}"))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(what))
}

fn field_of<'a>(v: &'a Value, key: &str, what: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::Parse(format!("{what} is missing {key:?}")))
}

pub fn scalar_to_json<F: Field>(f: F, x: &F::Elem) -> Value {
    Value::String(f.format(x))
}

pub fn scalar_from_json<F: Field>(f: F, v: &Value) -> Result<F::Elem> {
    match v {
        Value::String(s) => f.parse(s),
        Value::Number(n) => n
            .as_i64()
            .map(|k| f.from_i64(k))
            .ok_or_else(|| Error::Parse(format!("scalar {n} is not an integer"))),
        _ => Err(bad("scalar")),
    }
}

pub fn vec_to_json<F: Field>(f: F, xs: &[F::Elem]) -> Value {
    Value::Array(xs.iter().map(|x| scalar_to_json(f, x)).collect())
}

pub fn vec_from_json<F: Field>(f: F, v: &Value) -> Result<Vec<F::Elem>> {
    array(v, "vector")?
        .iter()
        .map(|x| scalar_from_json(f, x))
        .collect()
}

/// A point with `n` coordinates.
pub fn point_from_json<F: Field>(f: F, v: &Value, n: usize) -> Result<Vec<F::Elem>> {
    let p = vec_from_json(f, v)?;
    crate::proj::check_point(f, &p, n)?;
    Ok(p)
}

pub fn matrix_to_json<F: Field>(m: &Matrix<F>) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| vec_to_json(m.field(), r))
            .collect(),
    )
}

pub fn matrix_from_json<F: Field>(f: F, v: &Value) -> Result<Matrix<F>> {
    let rows = array(v, "matrix")?
        .iter()
        .map(|r| vec_from_json(f, r))
        .collect::<Result<Vec<_>>>()?;
    let cols = rows.first().map_or(0, |r| r.len());
    Matrix::from_rows(f, cols, rows)
}

pub fn poly_to_json<F: Field>(p: &HomogPoly<F>) -> Value {
    let f = p.field();
    let terms: Vec<Value> = p
        .terms()
        .map(|(e, c)| json!({"e": e, "c": f.format(c)}))
        .collect();
    json!({"nvars": p.nvars(), "degree": p.degree(), "terms": terms})
}

pub fn poly_from_json<F: Field>(f: F, v: &Value) -> Result<HomogPoly<F>> {
    let nvars = field_of(v, "nvars", "polynomial")?
        .as_u64()
        .ok_or_else(|| bad("nvars"))? as usize;
    let degree = field_of(v, "degree", "polynomial")?
        .as_u64()
        .ok_or_else(|| bad("degree"))? as u32;
    let terms = array(field_of(v, "terms", "polynomial")?, "terms")?
        .iter()
        .map(|t| {
            let e: Vec<u32> = serde_json::from_value(field_of(t, "e", "term")?.clone())
                .map_err(|_| bad("exponent"))?;
            Ok((e, scalar_from_json(f, field_of(t, "c", "term")?)?))
        })
        .collect::<Result<Vec<_>>>()?;
    HomogPoly::from_terms(f, nvars, degree, terms)
}

pub fn ideal_to_json<F: Field>(i: &GradedIdeal<F>) -> Value {
    json!({
        "nvars": i.nvars(),
        "gens": i.generators().iter().map(poly_to_json).collect::<Vec<_>>(),
    })
}

pub fn ideal_from_json<F: Field>(f: F, v: &Value) -> Result<GradedIdeal<F>> {
    let nvars = field_of(v, "nvars", "ideal")?
        .as_u64()
        .ok_or_else(|| bad("nvars"))? as usize;
    let gens = array(field_of(v, "gens", "ideal")?, "generators")?
        .iter()
        .map(|g| poly_from_json(f, g))
        .collect::<Result<Vec<_>>>()?;
    GradedIdeal::new(f, nvars, gens)
}

/// Field recorded in a JSON object, if any.
pub fn declared_field(v: &Value) -> Result<Option<FieldSpec>> {
    match v.get("field") {
        None => Ok(None),
        Some(Value::String(s)) => Ok(Some(s.parse()?)),
        Some(_) => Err(bad("field")),
    }
}

fn check_declared<F: Field>(f: F, v: &Value) -> Result<()> {
    if let Some(spec) = declared_field(v)? {
        if spec != f.spec() {
            return Err(Error::FieldMismatch(spec.to_string(), f.spec().to_string()));
        }
    }
    Ok(())
}

pub fn tensor_to_json<F: Field>(t: &CuboCubicTensor<F>) -> Value {
    let f = t.field();
    let a: Vec<Value> = t
        .nested()
        .iter()
        .map(|m| Value::Array(m.iter().map(|r| vec_to_json(f, r)).collect()))
        .collect();
    json!({"field": f.spec().to_string(), "a": a})
}

pub fn tensor_from_json<F: Field>(f: F, v: &Value) -> Result<CuboCubicTensor<F>> {
    check_declared(f, v)?;
    let a = array(field_of(v, "a", "tensor")?, "tensor")?
        .iter()
        .map(|m| {
            array(m, "tensor slice")?
                .iter()
                .map(|r| vec_from_json(f, r))
                .collect()
        })
        .collect::<Result<Vec<Vec<Vec<F::Elem>>>>>()?;
    CuboCubicTensor::new(f, a)
}

/// Matrix of linear forms as rows of coefficient vectors.
pub fn linear_form_matrix_to_json<F: Field>(m: &LinearFormMatrix<F>) -> Value {
    let f = m.field();
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| {
            Value::Array(
                (0..m.cols())
                    .map(|j| vec_to_json(f, m.coeffs(i, j)))
                    .collect(),
            )
        })
        .collect();
    json!({"nvars": m.nvars(), "rows": rows})
}

pub fn linear_form_matrix_from_json<F: Field>(f: F, v: &Value) -> Result<LinearFormMatrix<F>> {
    let nvars = field_of(v, "nvars", "linear form matrix")?
        .as_u64()
        .ok_or_else(|| bad("nvars"))? as usize;
    let entries = array(field_of(v, "rows", "linear form matrix")?, "rows")?
        .iter()
        .map(|r| {
            array(r, "row")?
                .iter()
                .map(|e| vec_from_json(f, e))
                .collect()
        })
        .collect::<Result<Vec<Vec<Vec<F::Elem>>>>>()?;
    LinearFormMatrix::new(f, nvars, entries)
}

/// The three slicings of a tensor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum View {
    Tensor,
    SourceMatrix,
    TargetMatrix,
    RSlice,
}

impl std::str::FromStr for View {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tensor" => Ok(View::Tensor),
            "sourceMatrix" => Ok(View::SourceMatrix),
            "targetMatrix" => Ok(View::TargetMatrix),
            "rSlice" => Ok(View::RSlice),
            _ => Err(Error::Parse(format!("unknown view {s:?}"))),
        }
    }
}

impl View {
    pub fn name(&self) -> &'static str {
        match self {
            View::Tensor => "tensor",
            View::SourceMatrix => "sourceMatrix",
            View::TargetMatrix => "targetMatrix",
            View::RSlice => "rSlice",
        }
    }
}

pub fn view_to_json<F: Field>(t: &CuboCubicTensor<F>, view: View) -> Value {
    let f = t.field();
    let body = match view {
        View::Tensor => return tensor_to_json(t),
        View::SourceMatrix => linear_form_matrix_to_json(&t.source_matrix()),
        View::TargetMatrix => linear_form_matrix_to_json(&t.target_matrix()),
        View::RSlice => {
            let rows: Vec<Value> = t
                .r_slice()
                .iter()
                .map(|r| Value::Array(r.iter().map(|e| vec_to_json(f, e)).collect()))
                .collect();
            json!({"nvars": 3, "rows": rows})
        }
    };
    let mut m = Map::new();
    m.insert("field".into(), Value::String(f.spec().to_string()));
    m.insert("view".into(), Value::String(view.name().into()));
    if let Value::Object(b) = body {
        m.extend(b);
    }
    Value::Object(m)
}

/// Reads any slicing; objects without a `view` key are plain tensors.
pub fn view_from_json<F: Field>(f: F, v: &Value) -> Result<CuboCubicTensor<F>> {
    check_declared(f, v)?;
    let view: View = match v.get("view") {
        None => View::Tensor,
        Some(Value::String(s)) => s.parse()?,
        Some(_) => return Err(bad("view")),
    };
    match view {
        View::Tensor => tensor_from_json(f, v),
        View::SourceMatrix => {
            CuboCubicTensor::from_source_matrix(&linear_form_matrix_from_json(f, v)?)
        }
        View::TargetMatrix => {
            CuboCubicTensor::from_target_matrix(&linear_form_matrix_from_json(f, v)?)
        }
        View::RSlice => {
            let s = array(field_of(v, "rows", "rSlice")?, "rows")?
                .iter()
                .map(|r| {
                    array(r, "row")?
                        .iter()
                        .map(|e| vec_from_json(f, e))
                        .collect()
                })
                .collect::<Result<Vec<Vec<Vec<F::Elem>>>>>()?;
            CuboCubicTensor::from_r_slice(f, &s)
        }
    }
}

pub fn triple_to_json<F: Field>(t: &NetTriple<F>) -> Value {
    json!({
        "phi": tensor_to_json(&t.phi),
        "psi": matrix_to_json(&t.psi),
        "psiPrime": matrix_to_json(&t.psi_prime),
    })
}

pub fn triple_from_json<F: Field>(f: F, v: &Value) -> Result<NetTriple<F>> {
    NetTriple::new(
        tensor_from_json(f, field_of(v, "phi", "triple")?)?,
        matrix_from_json(f, field_of(v, "psi", "triple")?)?,
        matrix_from_json(f, field_of(v, "psiPrime", "triple")?)?,
    )
}

pub fn binary_form_to_json<F: Field>(b: &BinaryForm<F>) -> Value {
    vec_to_json(b.field(), b.coeffs())
}

pub fn binary_form_from_json<F: Field>(f: F, v: &Value) -> Result<BinaryForm<F>> {
    BinaryForm::new(f, vec_from_json(f, v)?)
}

/// A plane cubic: a polynomial object or its ten coefficients.
pub fn cubic_from_json<F: Field>(f: F, v: &Value) -> Result<HomogPoly<F>> {
    let p = if v.is_array() {
        crate::schwarz::ternary_cubic(f, &vec_from_json(f, v)?)?
    } else {
        poly_from_json(f, v)?
    };
    if p.nvars() != 3 || p.degree() != 3 || p.is_zero() {
        return Err(Error::InvalidInput(
            "expected a nonzero ternary cubic".into(),
        ));
    }
    Ok(p)
}

pub fn section_to_json<F: Field>(s: &SectionF1<F>) -> Value {
    Value::Array(
        s.coeffs()
            .iter()
            .map(|r| vec_to_json(s.field(), r))
            .collect(),
    )
}

pub fn section_from_json<F: Field>(f: F, v: &Value) -> Result<SectionF1<F>> {
    let rows = array(v, "section")?
        .iter()
        .map(|r| vec_from_json(f, r))
        .collect::<Result<Vec<_>>>()?;
    SectionF1::new(f, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, QuadraticExtension, Rationals};
    use crate::rng::rng_for;

    #[test]
    fn scalars_and_polys() {
        let q = Rationals;
        assert_eq!(scalar_to_json(q, &q.parse("-6/4").unwrap()), json!("-3/2"));
        assert_eq!(scalar_from_json(q, &json!(3)).unwrap(), q.from_i64(3));
        let k = QuadraticExtension::new(7).unwrap();
        let x = scalar_from_json(k, &json!("2+3*s")).unwrap();
        assert_eq!(scalar_to_json(k, &x), json!("2+3*s"));
        let f = PrimeField::new(101).unwrap();
        let p = HomogPoly::from_coeffs(f, 3, 2, &[1, 0, 2, 0, 0, 100]).unwrap();
        let v = poly_to_json(&p);
        assert_eq!(poly_from_json(f, &v).unwrap(), p);
        let i = GradedIdeal::new(f, 3, vec![p.clone()]).unwrap();
        assert_eq!(ideal_from_json(f, &ideal_to_json(&i)).unwrap(), i);
        assert!(poly_from_json(f, &json!({"nvars": 3})).is_err());
    }

    #[test]
    fn tensor_views_round_trip() {
        let f = PrimeField::new(101).unwrap();
        let mut rng = rng_for(0, "json", 0);
        let t = CuboCubicTensor::random(f, &mut rng);
        for view in [
            View::Tensor,
            View::SourceMatrix,
            View::TargetMatrix,
            View::RSlice,
        ] {
            let v = view_to_json(&t, view);
            assert_eq!(view_from_json(f, &v).unwrap(), t, "{}", view.name());
        }
        let v = view_to_json(&t, View::SourceMatrix);
        assert_eq!(v["rows"].as_array().unwrap().len(), 4);
        assert_eq!(v["rows"][0].as_array().unwrap().len(), 3);
        let g = PrimeField::new(103).unwrap();
        assert!(tensor_from_json(g, &tensor_to_json(&t)).is_err());
        let text = serde_json::to_string(&tensor_to_json(&t)).unwrap();
        assert!(serde_json::from_str::<Value>(&text[..text.len() / 2]).is_err());
    }
}
