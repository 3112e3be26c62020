//! External fields `F(t) ∈ ℂ³`: the [`Field`] trait, declarative
//! [`FieldSpec`]s and their JSON envelope.

pub mod expr;

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64 as C64;
use serde_json::{json, Value};

use crate::catalog;
use crate::error::{Error, Result};
use crate::spinor::CVec3;
pub use expr::{parse_program, print_program, ExprNode, Func};

/// A time-dependent field.
pub trait Field: Send + Sync {
    fn eval(&self, t: f64) -> Result<CVec3>;
}

/// Adapts a closure `t ↦ F(t)`.
pub struct FnField<F>(pub F);

impl<F> Field for FnField<F>
where
    F: Fn(f64) -> Result<CVec3> + Send + Sync,
{
    fn eval(&self, t: f64) -> Result<CVec3> {
        (self.0)(t)
    }
}

impl<T: Field + ?Sized> Field for &T {
    fn eval(&self, t: f64) -> Result<CVec3> {
        (**self).eval(t)
    }
}

impl<T: Field + ?Sized> Field for Box<T> {
    fn eval(&self, t: f64) -> Result<CVec3> {
        (**self).eval(t)
    }
}

impl<T: Field + ?Sized> Field for Arc<T> {
    fn eval(&self, t: f64) -> Result<CVec3> {
        (**self).eval(t)
    }
}

impl Field for CVec3 {
    fn eval(&self, _t: f64) -> Result<CVec3> {
        Ok(*self)
    }
}

pub type Params = BTreeMap<String, C64>;

/// Three expression trees plus values for their free parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct ExprField {
    pub components: [ExprNode; 3],
    pub params: Params,
}

impl ExprField {
    /// Parses a program and checks that every identifier has a value.
    pub fn new(program: &str, params: Params) -> Result<Self> {
        let f = ExprField { components: parse_program(program)?, params };
        f.check_params()?;
        Ok(f)
    }

    pub fn free_params(&self) -> Vec<String> {
        let mut names = vec![];
        self.components.iter().for_each(|e| e.params(&mut names));
        names
    }

    pub fn check_params(&self) -> Result<()> {
        match self.free_params().into_iter().find(|p| !self.params.contains_key(p)) {
            Some(p) => Err(Error::UnknownIdentifier(p)),
            None => Ok(()),
        }
    }

    pub fn program(&self) -> String {
        print_program(&self.components)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum FieldSpec {
    Expr(ExprField),
    /// One of the closed-form catalog fields.
    Catalog { id: u8, params: Params },
    Const(CVec3),
}

impl FieldSpec {
    /// Parses a DSL program with no parameters.
    pub fn parse(program: &str) -> Result<Self> {
        Ok(FieldSpec::Expr(ExprField::new(program, Params::new())?))
    }

    pub fn expr(program: &str, params: Params) -> Result<Self> {
        Ok(FieldSpec::Expr(ExprField::new(program, params)?))
    }

    /// Catalog field; missing parameters take the entry defaults.
    pub fn catalog(id: u8, params: Params) -> Result<Self> {
        let entry = catalog::entry(id)?;
        let params = entry.resolve_params(&params)?;
        Ok(FieldSpec::Catalog { id, params })
    }

    /// Evaluates with `overrides` taking precedence over stored parameters.
    pub fn eval_with(&self, t: f64, overrides: &Params) -> Result<CVec3> {
        match self {
            FieldSpec::Const(v) => Ok(*v),
            FieldSpec::Expr(e) => {
                let merged;
                let params = if overrides.is_empty() {
                    &e.params
                } else {
                    merged = merge(&e.params, overrides);
                    &merged
                };
                let [a, b, c] = &e.components;
                Ok(CVec3::new(a.eval(t, params)?, b.eval(t, params)?, c.eval(t, params)?))
            }
            FieldSpec::Catalog { id, params } => {
                let entry = catalog::entry(*id)?;
                if overrides.is_empty() {
                    entry.field(params, t)
                } else {
                    entry.field(&merge(params, overrides), t)
                }
            }
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let kind = v
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Invalid("field spec: missing string member `kind`".into()))?;
        let params = match v.get("params") {
            None | Some(Value::Null) => Params::new(),
            Some(p) => parse_params_json(p)?,
        };
        let defs = v.get("defs").unwrap_or(&Value::Null);
        match kind {
            "expr" => {
                let program = match defs {
                    Value::String(s) => s.clone(),
                    Value::Object(m) => {
                        let mut parts = vec![];
                        for (k, e) in m {
                            let s = e.as_str().ok_or_else(|| {
                                Error::Invalid(format!("field spec: component `{k}` must be a string"))
                            })?;
                            parts.push(format!("{k} = {s}"));
                        }
                        parts.join("; ")
                    }
                    _ => return Err(Error::Invalid("field spec: `defs` of an expr field must be a string".into())),
                };
                FieldSpec::expr(&program, params)
            }
            "catalog" => {
                let id = match defs {
                    Value::Number(n) => n.as_u64(),
                    Value::Object(m) => m.get("id").and_then(Value::as_u64),
                    _ => None,
                }
                .ok_or_else(|| Error::Invalid("field spec: catalog `defs` must be an id or {\"id\": n}".into()))?;
                let id = u8::try_from(id).map_err(|_| Error::Invalid(format!("catalog id {id} out of range")))?;
                FieldSpec::catalog(id, params)
            }
            "const" => {
                let arr = defs
                    .as_array()
                    .filter(|a| a.len() == 3)
                    .ok_or_else(|| Error::Invalid("field spec: const `defs` must be three [re, im] pairs".into()))?;
                let mut c = [C64::new(0.0, 0.0); 3];
                for (k, x) in arr.iter().enumerate() {
                    c[k] = complex_from_json(x)?;
                }
                Ok(FieldSpec::Const(CVec3::from_components(c)))
            }
            other => Err(Error::Invalid(format!("field spec: unknown kind `{other}`"))),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            FieldSpec::Const(v) => json!({
                "kind": "const",
                "defs": v.components().iter().map(|z| json!([z.re, z.im])).collect::<Vec<_>>(),
            }),
            FieldSpec::Expr(e) => json!({
                "kind": "expr",
                "defs": e.program(),
                "params": params_to_json(&e.params),
            }),
            FieldSpec::Catalog { id, params } => json!({
                "kind": "catalog",
                "defs": {"id": id},
                "params": params_to_json(params),
            }),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        FieldSpec::from_json(&serde_json::from_str(s)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        FieldSpec::from_json_str(&std::fs::read_to_string(path)?)
    }
}

impl Field for FieldSpec {
    fn eval(&self, t: f64) -> Result<CVec3> {
        self.eval_with(t, &Params::new())
    }
}

/// Free-function form of [`FieldSpec::eval_with`].
pub fn eval_field(spec: &FieldSpec, t: f64, params: &Params) -> Result<CVec3> {
    spec.eval_with(t, params)
}

/// Free-function form of [`FieldSpec::parse`].
pub fn parse_field_spec(text: &str) -> Result<FieldSpec> {
    FieldSpec::parse(text)
}

/// `F = K + iG` with `K`, `G` real.
pub fn split_kg(f: &CVec3) -> ([f64; 3], [f64; 3]) {
    (f.re(), f.im())
}

fn merge(base: &Params, overrides: &Params) -> Params {
    let mut m = base.clone();
    m.extend(overrides.iter().map(|(k, v)| (k.clone(), *v)));
    m
}

fn complex_from_json(v: &Value) -> Result<C64> {
    match v {
        Value::Number(n) => Ok(C64::new(n.as_f64().unwrap_or(f64::NAN), 0.0)),
        Value::Array(a) if a.len() == 2 => match (a[0].as_f64(), a[1].as_f64()) {
            (Some(re), Some(im)) => Ok(C64::new(re, im)),
            _ => Err(Error::Invalid(format!("expected [re, im] numbers, got {v}"))),
        },
        _ => Err(Error::Invalid(format!("expected a number or [re, im], got {v}"))),
    }
}

pub fn parse_params_json(v: &Value) -> Result<Params> {
    let m = v
        .as_object()
        .ok_or_else(|| Error::Invalid("`params` must be an object".into()))?;
    m.iter().map(|(k, x)| Ok((k.clone(), complex_from_json(x)?))).collect()
}

pub fn params_to_json(p: &Params) -> Value {
    Value::Object(p.iter().map(|(k, z)| (k.clone(), json!([z.re, z.im]))).collect())
}

/// Parses `k=re[,im];k2=re` as used on the command line.
pub fn parse_params_arg(s: &str) -> Result<Params> {
    let mut out = Params::new();
    for item in s.split(';').map(str::trim).filter(|x| !x.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::Invalid(format!("parameter `{item}` is not of the form name=value")))?;
        let nums: Vec<&str> = v.split(',').map(str::trim).collect();
        let parse = |x: &str| {
            x.parse::<f64>()
                .map_err(|_| Error::Invalid(format!("parameter `{k}`: `{x}` is not a number")))
        };
        let z = match nums.as_slice() {
            [re] => C64::new(parse(re)?, 0.0),
            [re, im] => C64::new(parse(re)?, parse(im)?),
            _ => return Err(Error::Invalid(format!("parameter `{k}` takes re or re,im"))),
        };
        out.insert(k.trim().to_string(), z);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(pairs: &[(&str, f64)]) -> Params {
        pairs.iter().map(|(k, v)| (k.to_string(), C64::new(*v, 0.0))).collect()
    }

    #[test]
    fn expr_field_eval() {
        let f = FieldSpec::parse("F3 = 2*t").unwrap();
        assert_eq!(f.eval(1.5).unwrap(), CVec3::from_real([0.0, 0.0, 3.0]));
        let f = FieldSpec::parse("F1 = 1+2i").unwrap();
        assert_eq!(f.eval(0.0).unwrap().x, C64::new(1.0, 2.0));
        let f = FieldSpec::expr("F1 = a; F3 = b*t + c/t", p(&[("a", 1.0), ("b", 2.0), ("c", 3.0)])).unwrap();
        assert_eq!(f.eval(1.0).unwrap(), CVec3::from_real([1.0, 0.0, 5.0]));
        assert!(FieldSpec::parse("F3 = cot(t)").unwrap().eval(0.0).is_err());
        assert!(matches!(FieldSpec::parse("F1 = a"), Err(Error::UnknownIdentifier(_))));
        let over = p(&[("a", 5.0)]);
        let f = FieldSpec::expr("F1 = a", p(&[("a", 1.0)])).unwrap();
        assert_eq!(f.eval_with(0.0, &over).unwrap().x, C64::new(5.0, 0.0));
    }

    #[test]
    fn const_field_and_split() {
        let v = CVec3::new(C64::new(1.0, 2.0), C64::new(0.0, 0.0), C64::new(3.0, 0.0));
        assert_eq!(FieldSpec::Const(v).eval(17.0).unwrap(), v);
        let (k, g) = split_kg(&v);
        assert_eq!((k, g), ([1.0, 0.0, 3.0], [2.0, 0.0, 0.0]));
        let back = CVec3::new(C64::new(k[0], g[0]), C64::new(k[1], g[1]), C64::new(k[2], g[2]));
        assert_eq!(back, v);
    }

    #[test]
    fn json_envelope_round_trip() {
        let s = r#"{"kind":"expr","defs":"F1 = a*cos(w*t); F2 = a*sin(w*t); F3 = 1","params":{"a":[0.5,0],"w":[2,0]}}"#;
        let f = FieldSpec::from_json_str(s).unwrap();
        let g = FieldSpec::from_json(&f.to_json()).unwrap();
        assert_eq!(f, g);
        let c = FieldSpec::from_json_str(r#"{"kind":"const","defs":[[0,0],[0,0],[1,0.5]]}"#).unwrap();
        assert_eq!(c, FieldSpec::Const(CVec3::new(0.0.into(), 0.0.into(), C64::new(1.0, 0.5))));
        assert!(FieldSpec::from_json_str(r#"{"kind":"weird"}"#).is_err());
        let o = FieldSpec::from_json_str(r#"{"kind":"expr","defs":{"F3":"t"}}"#).unwrap();
        assert_eq!(o.eval(2.0).unwrap().z, C64::new(2.0, 0.0));
    }

    #[test]
    fn params_argument() {
        let m = parse_params_arg("a=1; b=2,-0.5;c = 3e-2").unwrap();
        assert_eq!(m["b"], C64::new(2.0, -0.5));
        assert_eq!(m["c"], C64::new(0.03, 0.0));
        assert!(parse_params_arg("a").is_err());
        assert!(parse_params_arg("a=x").is_err());
    }
}
