//! JSON encodings of instances, decompositions, witnesses and reports.
//!
//! Instances come in two forms:
//!
//! ```text
//! {"format":"table","n":2,"alpha":"1/2","values":{"--":"3","-0":"7/2",...}}
//! {"format":"sum","n":5,"alpha":"3/4","terms":[{"scope":[0,2],"values":{"++":"1",...}},...]}
//! ```
//!
//! Labelings are strings over `-`, `0`, `+`; rationals are `"p/q"` strings or
//! JSON integers. Table keys must cover all of `D^k` exactly.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};
use skewbisub::rational;
use skewbisub::{
    Alpha, ChainDecomposition, FractionalPoint, Labeling, MinimizeReport, Rational, SumFunction, TableFunction,
    Term, ValueOracle, ViolationWitness,
};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {msg}")]
    Field { path: String, msg: String },
}

fn field(path: impl Into<String>, msg: impl ToString) -> FormatError {
    FormatError::Field { path: path.into(), msg: msg.to_string() }
}

#[derive(Debug, Clone)]
pub enum Instance {
    Table(TableFunction),
    Sum(SumFunction),
}

impl Instance {
    pub fn oracle(&self) -> &dyn ValueOracle {
        match self {
            Instance::Table(t) => t,
            Instance::Sum(s) => s,
        }
    }

    pub fn arity(&self) -> usize {
        self.oracle().arity()
    }

    pub fn alpha(&self) -> &Alpha {
        self.oracle().alpha()
    }
}

fn get<'a>(obj: &'a Map<String, Value>, path: &str, key: &str) -> Result<&'a Value, FormatError> {
    obj.get(key).ok_or_else(|| field(format!("{path}.{key}"), "missing"))
}

pub fn parse_rational(v: &Value, path: &str) -> Result<Rational, FormatError> {
    match v {
        Value::String(s) => rational::parse(s).map_err(|e| field(path, e)),
        Value::Number(n) => n
            .as_i64()
            .map(rational::int)
            .ok_or_else(|| field(path, format!("{n} is not an integer; write fractions as \"p/q\" strings"))),
        other => Err(field(path, format!("expected a rational, found {other}"))),
    }
}

fn parse_arity(v: &Value, path: &str) -> Result<usize, FormatError> {
    match v.as_u64() {
        Some(n) if n >= 1 => Ok(n as usize),
        _ => Err(field(path, format!("expected a positive integer, found {v}"))),
    }
}

fn parse_table(v: &Value, arity: usize, alpha: &Alpha, path: &str) -> Result<TableFunction, FormatError> {
    let obj = v.as_object().ok_or_else(|| field(path, "expected an object keyed by labelings"))?;
    let mut map = BTreeMap::new();
    for (key, value) in obj {
        let kpath = format!("{path}[{key:?}]");
        let lab: Labeling = key.parse().map_err(|e| field(&kpath, e))?;
        if lab.arity() != arity {
            return Err(field(&kpath, format!("key has length {}, expected {arity}", lab.arity())));
        }
        map.insert(lab, parse_rational(value, &kpath)?);
    }
    if let Some(missing) = Labeling::all(arity).find(|a| !map.contains_key(a)) {
        return Err(field(path, format!("missing key \"{missing}\"")));
    }
    TableFunction::from_map(arity, alpha.clone(), &map).map_err(|e| field(path, e))
}

pub fn parse_instance(text: &str) -> Result<Instance, FormatError> {
    let root: Value = serde_json::from_str(text)?;
    instance_from_value(&root)
}

pub fn instance_from_value(root: &Value) -> Result<Instance, FormatError> {
    let obj = root.as_object().ok_or_else(|| field("$", "expected an object"))?;
    let n = parse_arity(get(obj, "$", "n")?, "$.n")?;
    let alpha_lit = parse_rational(get(obj, "$", "alpha")?, "$.alpha")?;
    let alpha = Alpha::new(alpha_lit).map_err(|e| field("$.alpha", e))?;
    match get(obj, "$", "format")?.as_str() {
        Some("table") => Ok(Instance::Table(parse_table(get(obj, "$", "values")?, n, &alpha, "$.values")?)),
        Some("sum") => {
            let terms = get(obj, "$", "terms")?.as_array().ok_or_else(|| field("$.terms", "expected an array"))?;
            let mut parsed = Vec::with_capacity(terms.len());
            for (t, term) in terms.iter().enumerate() {
                let path = format!("$.terms[{t}]");
                let tobj = term.as_object().ok_or_else(|| field(&path, "expected an object"))?;
                let scope_v = get(tobj, &path, "scope")?
                    .as_array()
                    .ok_or_else(|| field(format!("{path}.scope"), "expected an array"))?;
                let mut scope = Vec::with_capacity(scope_v.len());
                for (k, s) in scope_v.iter().enumerate() {
                    match s.as_u64() {
                        Some(j) if (j as usize) < n => scope.push(j as usize),
                        _ => return Err(field(format!("{path}.scope[{k}]"), format!("expected an index in 0..{n}, found {s}"))),
                    }
                }
                if scope.is_empty() {
                    return Err(field(format!("{path}.scope"), "empty scope"));
                }
                let table = parse_table(get(tobj, &path, "values")?, scope.len(), &alpha, &format!("{path}.values"))?;
                parsed.push(Term { scope, table });
            }
            SumFunction::new(n, alpha, parsed).map(Instance::Sum).map_err(|e| field("$.terms", e))
        }
        _ => Err(field("$.format", "expected \"table\" or \"sum\"")),
    }
}

fn table_values(t: &TableFunction) -> Value {
    let map: Map<String, Value> = Labeling::all(t.arity())
        .zip(t.values())
        .map(|(a, v)| (a.to_string(), Value::String(rational::format(v))))
        .collect();
    Value::Object(map)
}

pub fn instance_to_json(inst: &Instance) -> Value {
    match inst {
        Instance::Table(t) => json!({
            "format": "table",
            "n": t.arity(),
            "alpha": t.alpha().to_string(),
            "values": table_values(t),
        }),
        Instance::Sum(s) => json!({
            "format": "sum",
            "n": s.arity(),
            "alpha": s.alpha().to_string(),
            "terms": s.terms().iter().map(|term| json!({
                "scope": term.scope,
                "values": table_values(&term.table),
            })).collect::<Vec<_>>(),
        }),
    }
}

pub fn decomposition_to_json(d: &ChainDecomposition) -> Value {
    json!({
        "atoms": d.atoms().iter().map(|a| json!({
            "u": a.u.to_string(),
            "w": rational::format(&a.weight),
        })).collect::<Vec<_>>(),
    })
}

pub fn witness_to_json(w: &ViolationWitness) -> Value {
    json!({
        "a": w.a.to_string(),
        "b": w.b.to_string(),
        "lhs": rational::format(&w.lhs),
        "rhs": rational::format(&w.rhs),
    })
}

pub fn report_to_json(r: &MinimizeReport) -> Value {
    json!({
        "minimizer": r.minimizer.to_string(),
        "value": rational::format(&r.value),
        "iterations": r.iterations_used,
        "oracle_calls": r.oracle_calls,
        "trace": r.trajectory_best.iter().map(|(t, v)| json!([t, rational::format(v)])).collect::<Vec<_>>(),
    })
}

pub fn point_to_json(x: &FractionalPoint) -> Value {
    Value::Array(x.coords().iter().map(|c| Value::String(rational::format(c))).collect())
}

/// Parses a comma-separated list of rational literals, e.g. `"3/5,-1/5"`.
pub fn parse_point(text: &str, alpha: &Alpha, arity: usize) -> Result<FractionalPoint, FormatError> {
    let coords = text
        .split(',')
        .enumerate()
        .map(|(j, s)| rational::parse(s).map_err(|e| field(format!("point[{j}]"), e)))
        .collect::<Result<Vec<_>, _>>()?;
    if coords.len() != arity {
        return Err(field("point", format!("has {} coordinates, instance arity is {arity}", coords.len())));
    }
    FractionalPoint::new(coords, alpha.clone()).map_err(|e| match e {
        skewbisub::Error::OutOfBox { index, value } => {
            field(format!("point[{index}]"), format!("{value} lies outside [-{alpha}, 1]"))
        }
        other => field("point", other),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use skewbisub::rational::{int, ratio};
    use skewbisub::{decompose, generate_instance};

    fn unary_spike() -> &'static str {
        r#"{"format":"table","n":1,"alpha":"1/2","values":{"-":0,"0":"1","+":"0"}}"#
    }

    #[test]
    fn parses_table_form() {
        let inst = parse_instance(unary_spike()).unwrap();
        let Instance::Table(t) = &inst else { panic!("expected a table") };
        assert_eq!(t.values(), [int(0), int(1), int(0)]);
        assert_eq!(inst.alpha().value(), &ratio(1, 2));
    }

    #[test]
    fn emit_is_a_fixed_point() {
        let f = generate_instance(3, &Alpha::from_ratio(3, 4).unwrap(), 3, 2, 5).unwrap();
        let once = instance_to_json(&Instance::Sum(f));
        let twice = instance_to_json(&instance_from_value(&once).unwrap());
        assert_eq!(once, twice);
        assert_eq!(serde_json::to_string(&once).unwrap(), serde_json::to_string(&twice).unwrap());

        let t = instance_to_json(&parse_instance(unary_spike()).unwrap());
        assert_eq!(
            serde_json::to_string(&t).unwrap(),
            r#"{"format":"table","n":1,"alpha":"1/2","values":{"-":"0","0":"1","+":"0"}}"#
        );
    }

    #[test]
    fn errors_name_the_offending_key() {
        let cases = [
            (r#"{"format":"table","n":1,"alpha":"1/2","values":{"-":0,"0":1}}"#, "$.values", "missing key \"+\""),
            (r#"{"format":"table","n":1,"alpha":"1/2","values":{"-":0,"0":1,"x":0}}"#, "$.values[\"x\"]", "'x'"),
            (r#"{"format":"table","n":1,"alpha":"1/2","values":{"-":0,"0":1.5,"+":0}}"#, "$.values[\"0\"]", "integer"),
            (r#"{"format":"table","n":1,"alpha":"0","values":{}}"#, "$.alpha", "(0, 1]"),
            (r#"{"format":"table","n":0,"alpha":"1","values":{}}"#, "$.n", "positive"),
            (r#"{"format":"grid","n":1,"alpha":"1"}"#, "$.format", "table"),
            (r#"{"format":"sum","n":2,"alpha":"1","terms":[{"scope":[0,2],"values":{}}]}"#, "$.terms[0].scope[1]", "0..2"),
            (r#"{"format":"sum","n":2,"alpha":"1","terms":[{"scope":[1,1],"values":{"--":0,"-0":0,"-+":0,"0-":0,"00":0,"0+":0,"+-":0,"+0":0,"++":0}}]}"#, "$.terms", "repeated"),
            (r#"{"format":"sum","n":2,"alpha":"1","terms":[{"scope":[1],"values":{"--":0}}]}"#, "$.terms[0].values[\"--\"]", "length"),
        ];
        for (text, path, fragment) in cases {
            let err = parse_instance(text).unwrap_err();
            let FormatError::Field { path: p, msg } = &err else { panic!("unexpected {err}") };
            assert_eq!(p, path, "{text}");
            assert!(msg.contains(fragment), "{msg:?} lacks {fragment:?}");
        }
        assert!(matches!(parse_instance("{"), Err(FormatError::Json(_))));
    }

    #[test]
    fn point_parsing() {
        let half = Alpha::from_ratio(1, 2).unwrap();
        let x = parse_point("3/5, -1/5", &half, 2).unwrap();
        assert_eq!(x.coords(), [ratio(3, 5), ratio(-1, 5)]);
        let err = parse_point("3/5,-3/5", &half, 2).unwrap_err().to_string();
        assert!(err.starts_with("point[1]"), "{err}");
        assert!(parse_point("3/5", &half, 2).is_err());
        assert!(parse_point("0.5,0", &half, 2).unwrap_err().to_string().starts_with("point[0]"));
    }

    #[test]
    fn decomposition_json() {
        let half = Alpha::from_ratio(1, 2).unwrap();
        let d = decompose(&parse_point("3/5,-1/5", &half, 2).unwrap());
        assert_eq!(
            serde_json::to_string(&decomposition_to_json(&d)).unwrap(),
            r#"{"atoms":[{"u":"+-","w":"2/5"},{"u":"+0","w":"1/5"},{"u":"00","w":"2/5"}]}"#
        );
    }
}
