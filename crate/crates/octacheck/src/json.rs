//! JSON serialization with human-auditable fixtures: polynomials as sparse
//! strings (`"1 + 2*x + x^3"`), scalars as `"2/3"` or `"4"`, objects as
//! summand lists, morphisms as coefficient terms over the named bases.
//! `serde_json` maps are ordered, so output is byte-stable.

use serde_json::{json, Map, Value};
use std::collections::BTreeMap;

use crate::complex::FreeComplex;
use crate::exactalg::{Field, Poly, PolyMatrix, Scalar};
use crate::homcat::{BasisMor, HomElement, HomMatrix, MorKind, PObject, Summand};
use crate::scat::{PresCategory, SMorphism, SumObject};
use crate::tri::{Octahedron, Triangle};
use crate::{Error, Result};

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn as_obj(v: &Value) -> Result<&Map<String, Value>> {
    v.as_object().ok_or_else(|| bad("expected an object"))
}

fn get<'a>(m: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    m.get(key)
        .ok_or_else(|| bad(format!("missing key {key:?}")))
}

fn as_i64(v: &Value) -> Result<i64> {
    v.as_i64().ok_or_else(|| bad("expected an integer"))
}

fn as_str(v: &Value) -> Result<&str> {
    v.as_str().ok_or_else(|| bad("expected a string"))
}

fn as_array(v: &Value) -> Result<&Vec<Value>> {
    v.as_array().ok_or_else(|| bad("expected an array"))
}

// ---- scalars and polynomials ----------------------------------------------

pub fn scalar_to_string(field: Field, s: &Scalar) -> String {
    field.format(s)
}

pub fn scalar_from_str(field: Field, s: &str) -> Result<Scalar> {
    field.parse(s)
}

/// Renders a polynomial as `"0"`, `"x"`, `"2*x^3"`, `"1 + x^2"`, with
/// negative rational coefficients carried inside the coefficient string.
pub fn poly_to_string(field: Field, p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut terms = Vec::new();
    for (e, c) in p.coeffs().iter().enumerate() {
        if field.is_zero(c) {
            continue;
        }
        let coeff = field.format(c);
        let term = match e {
            0 => coeff,
            _ => {
                let xpow = if e == 1 {
                    "x".to_string()
                } else {
                    format!("x^{e}")
                };
                if field.is_one(c) {
                    xpow
                } else if coeff == "-1" {
                    format!("-{xpow}")
                } else {
                    format!("{coeff}*{xpow}")
                }
            }
        };
        terms.push(term);
    }
    terms.join(" + ")
}

/// Parses the output of [`poly_to_string`] (terms joined by `+`, each
/// `c`, `x^k`, `c*x^k`, optionally with a leading minus on the coefficient).
pub fn poly_from_str(field: Field, s: &str) -> Result<Poly> {
    let s = s.trim();
    if s.is_empty() || s == "0" {
        return Ok(Poly::zero());
    }
    let mut acc = Poly::zero();
    for raw in s.split('+') {
        let term = raw.trim();
        if term.is_empty() {
            return Err(bad(format!("empty term in polynomial {s:?}")));
        }
        let (coeff_str, exp) = match term.find('x') {
            None => (term, 0usize),
            Some(ix) => {
                let head = term[..ix].trim().trim_end_matches('*').trim();
                let tail = term[ix + 1..].trim();
                let exp = if tail.is_empty() {
                    1
                } else if let Some(e) = tail.strip_prefix('^') {
                    e.trim()
                        .parse::<usize>()
                        .map_err(|_| bad(format!("bad exponent in {term:?}")))?
                } else {
                    return Err(bad(format!("malformed term {term:?}")));
                };
                let head = if head.is_empty() {
                    "1"
                } else if head == "-" {
                    "-1"
                } else {
                    head
                };
                (head, exp)
            }
        };
        let coeff = field.parse(coeff_str)?;
        acc = acc.add(field, &Poly::monomial(field, coeff, exp));
    }
    Ok(acc)
}

pub fn poly_matrix_to_value(field: Field, m: &PolyMatrix) -> Value {
    let rows: Vec<Value> = (0..m.rows)
        .map(|r| {
            Value::Array(
                (0..m.cols)
                    .map(|c| Value::String(poly_to_string(field, m.get(r, c))))
                    .collect(),
            )
        })
        .collect();
    Value::Array(rows)
}

pub fn poly_matrix_from_value(
    field: Field,
    v: &Value,
    rows: usize,
    cols: usize,
) -> Result<PolyMatrix> {
    let data = as_array(v)?;
    if data.len() != rows {
        return Err(bad("matrix row count mismatch"));
    }
    let mut m = PolyMatrix::zero(rows, cols);
    for (r, row) in data.iter().enumerate() {
        let row = as_array(row)?;
        if row.len() != cols {
            return Err(bad("matrix column count mismatch"));
        }
        for (c, entry) in row.iter().enumerate() {
            m.set(r, c, poly_from_str(field, as_str(entry)?)?);
        }
    }
    Ok(m)
}

// ---- complexes -------------------------------------------------------------

pub fn complex_to_value(field: Field, c: &FreeComplex) -> Value {
    let mut ranks = Map::new();
    for (k, r) in c.ranks() {
        ranks.insert(k.to_string(), json!(r));
    }
    let mut diffs = Map::new();
    for (k, d) in c.stored_diffs() {
        diffs.insert(k.to_string(), poly_matrix_to_value(field, d));
    }
    json!({ "ranks": ranks, "diffs": diffs })
}

pub fn complex_from_value(field: Field, v: &Value) -> Result<FreeComplex> {
    let m = as_obj(v)?;
    let mut ranks = BTreeMap::new();
    for (k, r) in as_obj(get(m, "ranks")?)? {
        let deg: i64 = k.parse().map_err(|_| bad("bad degree key"))?;
        let rank = r.as_u64().ok_or_else(|| bad("bad rank"))? as usize;
        ranks.insert(deg, rank);
    }
    let mut diffs = BTreeMap::new();
    for (k, d) in as_obj(get(m, "diffs")?)? {
        let deg: i64 = k.parse().map_err(|_| bad("bad degree key"))?;
        let rows = ranks.get(&(deg + 1)).copied().unwrap_or(0);
        let cols = ranks.get(&deg).copied().unwrap_or(0);
        diffs.insert(deg, poly_matrix_from_value(field, d, rows, cols)?);
    }
    FreeComplex::new(field, ranks, diffs)
}

// ---- presented homotopy category -------------------------------------------

pub fn pobject_to_value(o: &PObject) -> Value {
    json!({
        "summands": o
            .summands
            .iter()
            .map(|s| json!({ "n": s.n, "shift": s.shift }))
            .collect::<Vec<_>>()
    })
}

pub fn pobject_from_value(v: &Value) -> Result<PObject> {
    let m = as_obj(v)?;
    let mut summands = Vec::new();
    for s in as_array(get(m, "summands")?)? {
        let s = as_obj(s)?;
        let n = get(s, "n")?.as_u64().ok_or_else(|| bad("bad summand"))? as usize;
        let shift = as_i64(get(s, "shift")?)?;
        if n == 0 {
            return Err(bad("summand exponent must be positive"));
        }
        summands.push(Summand::new(n, shift));
    }
    Ok(PObject { summands })
}

/// Parses a compact object string like `P3`, `P2[1]`, `P1[1]+P1`.
pub fn pobject_from_compact(s: &str) -> Result<PObject> {
    let s = s.trim();
    if s.is_empty() || s == "0" {
        return Ok(PObject::zero());
    }
    let mut summands = Vec::new();
    for part in s.split('+') {
        let part = part.trim();
        let rest = part
            .strip_prefix('P')
            .ok_or_else(|| bad(format!("expected Pn or Pn[s], got {part:?}")))?;
        let (n_str, shift) = match rest.find('[') {
            None => (rest, 0i64),
            Some(ix) => {
                let n_str = &rest[..ix];
                let tail = rest[ix + 1..]
                    .strip_suffix(']')
                    .ok_or_else(|| bad(format!("unclosed shift in {part:?}")))?;
                (n_str, tail.parse::<i64>().map_err(|_| bad("bad shift"))?)
            }
        };
        let n: usize = n_str.parse().map_err(|_| bad("bad exponent"))?;
        if n == 0 {
            return Err(bad("P0 is the zero object; drop the summand"));
        }
        summands.push(Summand::new(n, shift));
    }
    Ok(PObject { summands })
}

pub fn hom_element_terms_to_value(field: Field, el: &HomElement) -> Value {
    let terms: Vec<Value> = el
        .terms()
        .map(|(b, c)| {
            json!({
                "kind": match b.kind { MorKind::X => "x", MorKind::Y => "y" },
                "i": b.i,
                "coeff": scalar_to_string(field, c),
            })
        })
        .collect();
    Value::Array(terms)
}

pub fn hom_matrix_to_value(field: Field, m: &HomMatrix) -> Value {
    let rows: Vec<Value> = (0..m.tgt.summands.len())
        .map(|r| {
            Value::Array(
                (0..m.src.summands.len())
                    .map(|c| hom_element_terms_to_value(field, m.entry(r, c)))
                    .collect(),
            )
        })
        .collect();
    json!({
        "src": pobject_to_value(&m.src),
        "tgt": pobject_to_value(&m.tgt),
        "entries": rows,
    })
}

pub fn hom_matrix_from_value(field: Field, v: &Value) -> Result<HomMatrix> {
    let m = as_obj(v)?;
    let src = pobject_from_value(get(m, "src")?)?;
    let tgt = pobject_from_value(get(m, "tgt")?)?;
    let rows = as_array(get(m, "entries")?)?;
    if rows.len() != tgt.summands.len() {
        return Err(bad("entry grid has wrong number of rows"));
    }
    let mut out = HomMatrix::zero(src.clone(), tgt.clone());
    for (r, row) in rows.iter().enumerate() {
        let row = as_array(row)?;
        if row.len() != src.summands.len() {
            return Err(bad("entry grid has wrong number of columns"));
        }
        for (c, terms) in row.iter().enumerate() {
            let mut el = HomElement::zero(src.summands[c], tgt.summands[r]);
            for t in as_array(terms)? {
                let t = as_obj(t)?;
                let kind = match as_str(get(t, "kind")?)? {
                    "x" => MorKind::X,
                    "y" => MorKind::Y,
                    other => return Err(bad(format!("unknown kind {other:?}"))),
                };
                let i = get(t, "i")?.as_u64().ok_or_else(|| bad("bad exponent"))? as usize;
                let coeff = scalar_from_str(field, as_str(get(t, "coeff")?)?)?;
                let b = match kind {
                    MorKind::X => BasisMor::try_x(i, src.summands[c], tgt.summands[r])
                        .map_err(|e| bad(format!("{e}")))?,
                    MorKind::Y => BasisMor::try_y(i, src.summands[c], tgt.summands[r])
                        .map_err(|e| bad(format!("{e}")))?,
                };
                el = el.add(field, &HomElement::from_basis(field, &b, coeff));
            }
            out.set_entry(r, c, el);
        }
    }
    Ok(out)
}

// ---- triangles and octahedra ------------------------------------------------

pub fn triangle_to_value(field: Field, t: &Triangle) -> Value {
    json!({
        "f": hom_matrix_to_value(field, &t.f),
        "g": hom_matrix_to_value(field, &t.g),
        "h": hom_matrix_to_value(field, &t.h),
    })
}

pub fn triangle_from_value(field: Field, v: &Value) -> Result<Triangle> {
    let m = as_obj(v)?;
    Triangle::new(
        hom_matrix_from_value(field, get(m, "f")?)?,
        hom_matrix_from_value(field, get(m, "g")?)?,
        hom_matrix_from_value(field, get(m, "h")?)?,
    )
}

const OCT_KEYS: [&str; 14] = [
    "f", "g", "h", "f'", "f''", "h'", "h''", "g'", "g''", "k", "k'", "k''", "l", "l'",
];

pub fn octahedron_to_value(field: Field, o: &Octahedron) -> Value {
    let morphisms: Vec<&HomMatrix> = vec![
        &o.f, &o.g, &o.h, &o.fp, &o.fpp, &o.hp, &o.hpp, &o.gp, &o.gpp, &o.k, &o.kp, &o.kpp, &o.l,
        &o.lp,
    ];
    let mut map = Map::new();
    for (key, m) in OCT_KEYS.iter().zip(morphisms) {
        map.insert((*key).to_string(), hom_matrix_to_value(field, m));
    }
    Value::Object(map)
}

pub fn octahedron_from_value(field: Field, v: &Value) -> Result<Octahedron> {
    let m = as_obj(v)?;
    let fetch = |k: &str| -> Result<HomMatrix> { hom_matrix_from_value(field, get(m, k)?) };
    Octahedron::new(
        fetch("f")?,
        fetch("g")?,
        fetch("h")?,
        fetch("f'")?,
        fetch("f''")?,
        fetch("h'")?,
        fetch("h''")?,
        fetch("g'")?,
        fetch("g''")?,
        fetch("k")?,
        fetch("k'")?,
        fetch("k''")?,
        fetch("l")?,
        fetch("l'")?,
    )
}

// ---- sum morphisms over the presented category -------------------------------

pub fn sum_object_to_value(cat: &PresCategory, o: &SumObject) -> Value {
    let items: Vec<Value> = o
        .classes()
        .map(|((obj, shift), mult)| {
            json!({
                "obj": cat.objects[obj],
                "shift": shift,
                "mult": mult,
            })
        })
        .collect();
    Value::Array(items)
}

pub fn sum_object_from_value(cat: &PresCategory, v: &Value) -> Result<SumObject> {
    let mut items = Vec::new();
    for entry in as_array(v)? {
        let e = as_obj(entry)?;
        let obj = cat.try_object_index(as_str(get(e, "obj")?)?)?;
        let shift = as_i64(get(e, "shift")?)?;
        let mult = get(e, "mult")?.as_u64().ok_or_else(|| bad("bad mult"))? as usize;
        items.push(((obj, shift), mult));
    }
    Ok(SumObject::from_mults(items))
}

fn scalar_matrix_to_value(field: Field, m: &crate::exactalg::ScalarMat) -> Value {
    let rows: Vec<Value> = (0..m.rows)
        .map(|r| {
            Value::Array(
                (0..m.cols)
                    .map(|c| Value::String(field.format(m.get(r, c))))
                    .collect(),
            )
        })
        .collect();
    Value::Array(rows)
}

fn scalar_matrix_from_value(
    field: Field,
    v: &Value,
    rows: usize,
    cols: usize,
) -> Result<crate::exactalg::ScalarMat> {
    let data = as_array(v)?;
    if data.len() != rows {
        return Err(bad("scalar matrix row mismatch"));
    }
    let mut m = crate::exactalg::ScalarMat::zero(field, rows, cols);
    for (r, row) in data.iter().enumerate() {
        let row = as_array(row)?;
        if row.len() != cols {
            return Err(bad("scalar matrix column mismatch"));
        }
        for (c, s) in row.iter().enumerate() {
            m.set(r, c, field.parse(as_str(s)?)?);
        }
    }
    Ok(m)
}

pub fn smorphism_to_value(field: Field, cat: &PresCategory, u: &SMorphism) -> Value {
    let mut iparts = Map::new();
    for (&(obj, shift), m) in u.stored_iparts() {
        iparts.insert(
            format!("{}[{}]", cat.objects[obj], shift),
            scalar_matrix_to_value(field, m),
        );
    }
    let mut aparts = Map::new();
    for (&(arrow, n), m) in u.stored_aparts() {
        aparts.insert(
            format!("{}@{}", cat.arrows[arrow].name, n),
            scalar_matrix_to_value(field, m),
        );
    }
    json!({
        "src": sum_object_to_value(cat, &u.src),
        "tgt": sum_object_to_value(cat, &u.tgt),
        "iparts": iparts,
        "aparts": aparts,
    })
}

fn parse_class(cat: &PresCategory, key: &str) -> Result<(usize, i64)> {
    let open = key.rfind('[').ok_or_else(|| bad("bad class key"))?;
    let name = &key[..open];
    let shift = key[open + 1..]
        .strip_suffix(']')
        .ok_or_else(|| bad("bad class key"))?
        .parse::<i64>()
        .map_err(|_| bad("bad class shift"))?;
    Ok((cat.try_object_index(name)?, shift))
}

pub fn smorphism_from_value(field: Field, cat: &PresCategory, v: &Value) -> Result<SMorphism> {
    let m = as_obj(v)?;
    let src = sum_object_from_value(cat, get(m, "src")?)?;
    let tgt = sum_object_from_value(cat, get(m, "tgt")?)?;
    let mut out = SMorphism::zero(src.clone(), tgt.clone());
    for (key, mat) in as_obj(get(m, "iparts")?)? {
        let class = parse_class(cat, key)?;
        let parsed = scalar_matrix_from_value(field, mat, tgt.dim(class), src.dim(class))?;
        out.set_ipart(field, class, parsed);
    }
    for (key, mat) in as_obj(get(m, "aparts")?)? {
        let at = key.rfind('@').ok_or_else(|| bad("bad arrow key"))?;
        let arrow = cat.try_arrow_index(&key[..at])?;
        let n: i64 = key[at + 1..].parse().map_err(|_| bad("bad arrow shift"))?;
        let decl = &cat.arrows[arrow];
        let rows = tgt.dim((decl.tgt, n + decl.degree));
        let cols = src.dim((decl.src, n));
        out.set_apart(
            field,
            cat,
            arrow,
            n,
            scalar_matrix_from_value(field, mat, rows, cols)?,
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scat::{build_category, BuiltinCategory, SMorUnknowns};
    use crate::tri::builtin_octahedra;
    use proptest::prelude::*;

    #[test]
    fn poly_string_round_trip_fixed_cases() {
        let f = Field::Q;
        for s in ["0", "x^3", "1 + x", "2/3*x^2 + -1*x + 4"] {
            let p = poly_from_str(f, s).unwrap();
            let p2 = poly_from_str(f, &poly_to_string(f, &p)).unwrap();
            assert_eq!(p, p2);
        }
        let f5 = Field::fp(5).unwrap();
        assert_eq!(
            poly_from_str(f5, "6*x").unwrap(),
            Poly::monomial(f5, f5.from_i64(1), 1)
        );
    }

    #[test]
    fn complex_and_triangle_round_trips() {
        let field = Field::Q;
        let (o1, _) = builtin_octahedra(field);
        let chain = crate::homcat::realize(field, &o1.l);
        let (cone, _, _) = crate::complex::cone_of(field, &chain).unwrap();
        for c in [chain.source.clone(), chain.target.clone(), cone] {
            let v = complex_to_value(field, &c);
            assert_eq!(complex_from_value(field, &v).unwrap(), c);
        }
        let t = o1.tri5(field);
        let v = triangle_to_value(field, &t);
        let back = triangle_from_value(field, &v).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn octahedron_round_trip() {
        for field in [Field::Q, Field::fp(5).unwrap()] {
            let (o1, o2) = builtin_octahedra(field);
            for o in [o1, o2] {
                let v = octahedron_to_value(field, &o);
                let back = octahedron_from_value(field, &v).unwrap();
                assert_eq!(back, o);
            }
        }
    }

    #[test]
    fn compact_pobject_strings() {
        assert_eq!(pobject_from_compact("P3").unwrap(), PObject::single(3, 0));
        assert_eq!(
            pobject_from_compact("P2[1]").unwrap(),
            PObject::single(2, 1)
        );
        assert_eq!(
            pobject_from_compact("P1[1]+P1").unwrap(),
            PObject::from_summands(vec![(1, 1), (1, 0)])
        );
        assert!(pobject_from_compact("P0").is_err());
    }

    #[test]
    fn smorphism_round_trip() {
        use rand::SeedableRng;
        let field = Field::fp(3).unwrap();
        let cat = build_category(field, BuiltinCategory::S).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let src = SumObject::from_mults(vec![((1, 0), 2), ((4, 0), 1)]);
        let tgt = SumObject::from_mults(vec![((2, 0), 1), ((4, 1), 1), ((1, 0), 1)]);
        let unk = SMorUnknowns::new(&cat, &src, &tgt);
        let vals: Vec<Scalar> = (0..unk.len()).map(|_| field.sample(&mut rng)).collect();
        let u = unk.matrix_from(field, &cat, &vals);
        let v = smorphism_to_value(field, &cat, &u);
        let back = smorphism_from_value(field, &cat, &v).unwrap();
        assert_eq!(back, u);
    }

    proptest! {
        #[test]
        fn poly_round_trip_over_q(coeffs in proptest::collection::vec(-20i64..20, 0..8)) {
            let f = Field::Q;
            let p = Poly::from_coeffs(f, coeffs.iter().map(|&c| f.from_i64(c)).collect());
            let s = poly_to_string(f, &p);
            let back = poly_from_str(f, &s).unwrap();
            prop_assert_eq!(p, back);
        }

        #[test]
        fn hom_matrix_round_trip(seed in 0u64..500) {
            use rand::SeedableRng;
            let field = Field::fp(7).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let src = PObject::from_summands(vec![(2, 0), (3, 1)]);
            let tgt = PObject::from_summands(vec![(1, 0), (3, 1), (2, 2)]);
            let unk = crate::homcat::HomUnknowns::new(&src, &tgt);
            let vals: Vec<Scalar> = (0..unk.len()).map(|_| field.sample(&mut rng)).collect();
            let m = unk.matrix_from(field, &vals);
            let back = hom_matrix_from_value(field, &hom_matrix_to_value(field, &m)).unwrap();
            prop_assert_eq!(back, m);
        }
    }
}
