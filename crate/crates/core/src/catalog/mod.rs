//! Catalog of multiplicity-free spaces with one-dimensional quotient.
//!
//! The data lives in `spaces.txt` (format documented in its header) and is
//! parsed and validated on first use.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use serde::{Serialize, Serializer};

use crate::ratpoly::{fmt_rational, parse, rational_to_i64, ratio, xvar, RatPoly, Rational};
use crate::torus::SpaceParams;
use crate::weyl::InstanceKind;
use crate::{Error, Result};

const DATA: &str = include_str!("spaces.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Structure {
    CommutativeParabolic,
    Parabolic,
    NonParabolic,
}

#[derive(Clone, Debug)]
struct Record {
    line: usize,
    name: String,
    table: u8,
    bounds: Vec<(String, i64)>,
    rank: RatPoly,
    dim: RatPoly,
    d0: RatPoly,
    regular: bool,
    structure: Structure,
    samples: Vec<(String, i64, i64)>,
    group: String,
    invariant: String,
}

fn ser_opt_rational<S: Serializer>(v: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(q) => s.serialize_some(&fmt_rational(q)),
        None => s.serialize_none(),
    }
}

fn ser_opt_display<T: std::fmt::Display, S: Serializer>(v: &Option<T>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_some(&x.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpaceEntry {
    pub name: String,
    pub table: u8,
    pub params: BTreeMap<String, i64>,
    pub rank: i64,
    pub dim: i64,
    pub d0: i64,
    /// `d0..dr`; only known for commutative parabolic entries.
    pub degrees: Option<Vec<i64>>,
    /// The constant `d` with `d/2 = (dim - d0) / ((d0 - 1) d0)`.
    #[serde(serialize_with = "ser_opt_rational")]
    pub d_param: Option<Rational>,
    pub regular: bool,
    pub structure: Structure,
    pub group: String,
    pub invariant_desc: String,
    #[serde(serialize_with = "ser_opt_display")]
    pub oracle: Option<InstanceKind>,
}

impl SpaceEntry {
    pub fn parabolic(&self) -> bool {
        self.structure != Structure::NonParabolic
    }

    pub fn commutative_parabolic(&self) -> bool {
        self.structure == Structure::CommutativeParabolic
    }

    /// `d/2`, when defined.
    pub fn d_half(&self) -> Option<Rational> {
        self.d_param.as_ref().map(|d| d * ratio(1, 2))
    }

    /// `det(n=3)`, `E7`, `sln_sl2sp(m=2, n=3)`.
    pub fn label(&self) -> String {
        if self.params.is_empty() {
            return self.name.clone();
        }
        let ps: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{}({})", self.name, ps.join(", "))
    }
}

fn data_err(line: usize, msg: impl Into<String>) -> Error {
    Error::CatalogData { line, msg: msg.into() }
}

fn parse_record(line: usize, text: &str) -> Result<Record> {
    let f: Vec<&str> = text.split('|').map(str::trim).collect();
    if f.len() != 11 {
        return Err(data_err(line, format!("expected 11 fields, found {}", f.len())));
    }
    let table: u8 = f[1].parse().map_err(|_| data_err(line, "bad table number"))?;
    let mut bounds = Vec::new();
    if f[2] != "-" {
        for b in f[2].split(',') {
            let (name, min) = b
                .trim()
                .split_once(">=")
                .ok_or_else(|| data_err(line, format!("bad parameter bound `{b}`")))?;
            let min: i64 = min.trim().parse().map_err(|_| data_err(line, "bad bound"))?;
            bounds.push((name.trim().to_string(), min));
        }
    }
    let expr = |s: &str| parse(s).map_err(|e| data_err(line, format!("bad expression `{s}`: {e}")));
    let regular = match f[6] {
        "yes" => true,
        "no" => false,
        other => return Err(data_err(line, format!("regular must be yes/no, got `{other}`"))),
    };
    let structure = match f[7] {
        "commutative" => Structure::CommutativeParabolic,
        "parabolic" => Structure::Parabolic,
        "none" => Structure::NonParabolic,
        other => return Err(data_err(line, format!("unknown type `{other}`"))),
    };
    let mut samples = Vec::new();
    if f[8] != "-" {
        for s in f[8].split(',') {
            let (name, range) = s
                .trim()
                .split_once('=')
                .ok_or_else(|| data_err(line, format!("bad sample `{s}`")))?;
            let (lo, hi) = range
                .split_once("..")
                .ok_or_else(|| data_err(line, format!("bad sample range `{range}`")))?;
            let lo: i64 = lo.trim().parse().map_err(|_| data_err(line, "bad sample bound"))?;
            let hi: i64 = hi.trim().parse().map_err(|_| data_err(line, "bad sample bound"))?;
            samples.push((name.trim().to_string(), lo, hi));
        }
    }
    Ok(Record {
        line,
        name: f[0].to_string(),
        table,
        bounds,
        rank: expr(f[3])?,
        dim: expr(f[4])?,
        d0: expr(f[5])?,
        regular,
        structure,
        samples,
        group: f[9].to_string(),
        invariant: f[10].to_string(),
    })
}

fn oracle_for(name: &str, params: &BTreeMap<String, i64>) -> Option<InstanceKind> {
    let p = |k: &str| params.get(k).copied();
    match name {
        "quad" => p("m").filter(|m| (3..=6).contains(m)).map(|m| InstanceKind::Quad(m as u32)),
        "det" => p("n").filter(|n| (2..=3).contains(n)).map(|n| InstanceKind::Det(n as u32)),
        "sym" if p("n") == Some(2) => Some(InstanceKind::Sym2),
        "pf" if p("p") == Some(2) => Some(InstanceKind::Pf4),
        _ => None,
    }
}

impl Record {
    fn instantiate(&self, params: &BTreeMap<String, i64>) -> Result<SpaceEntry> {
        for (k, min) in &self.bounds {
            match params.get(k) {
                None => return Err(Error::InvalidParams(format!("{} needs parameter `{k}`", self.name))),
                Some(v) if v < min => {
                    return Err(Error::InvalidParams(format!("{}: {k} = {v} violates {k} >= {min}", self.name)))
                }
                _ => {}
            }
        }
        if let Some(extra) = params.keys().find(|k| !self.bounds.iter().any(|(b, _)| b == *k)) {
            return Err(Error::InvalidParams(format!("{} has no parameter `{extra}`", self.name)));
        }
        let point: Vec<(&str, Rational)> = params
            .iter()
            .map(|(k, v)| (k.as_str(), Rational::from_integer((*v).into())))
            .collect();
        let int = |e: &RatPoly, what: &str| -> Result<i64> {
            let v = e.eval(&point).map_err(|err| data_err(self.line, format!("{what}: {err}")))?;
            rational_to_i64(&v).ok_or_else(|| data_err(self.line, format!("{what} is not an integer")))
        };
        let rank = int(&self.rank, "rank")?;
        let dim = int(&self.dim, "dim")?;
        let d0 = int(&self.d0, "d0")?;
        if d0 < 1 || rank < 1 || dim < 1 {
            return Err(data_err(self.line, "rank, dim and d0 must be positive"));
        }
        let degrees = if self.structure == Structure::CommutativeParabolic {
            if d0 != rank {
                return Err(data_err(self.line, format!("commutative entry needs d0 = rank, got {d0} and {rank}")));
            }
            Some((1..=rank).rev().collect())
        } else {
            None
        };
        let d_param = (d0 >= 2).then(|| ratio(2 * (dim - d0), (d0 - 1) * d0));
        Ok(SpaceEntry {
            name: self.name.clone(),
            table: self.table,
            params: params.clone(),
            rank,
            dim,
            d0,
            degrees,
            d_param,
            regular: self.regular,
            structure: self.structure,
            group: self.group.clone(),
            invariant_desc: self.invariant.clone(),
            oracle: oracle_for(&self.name, params),
        })
    }

    fn sample_points(&self) -> Vec<BTreeMap<String, i64>> {
        let mut points = vec![BTreeMap::new()];
        for (k, lo, hi) in &self.samples {
            let mut next = Vec::new();
            for p in &points {
                for v in *lo..=*hi {
                    let mut q = p.clone();
                    q.insert(k.clone(), v);
                    next.push(q);
                }
            }
            points = next;
        }
        points
    }
}

#[derive(Debug)]
pub struct Catalog {
    records: Vec<Record>,
}

#[derive(Clone, Debug, Default)]
pub struct Filter {
    pub table: Option<u8>,
    pub commutative_only: bool,
    pub max_rank: Option<i64>,
}

impl Catalog {
    pub fn parse(text: &str) -> Result<Catalog> {
        let mut records: Vec<Record> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let t = raw.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let rec = parse_record(i + 1, t)?;
            if records.iter().any(|r| r.name == rec.name) {
                return Err(data_err(i + 1, format!("duplicate entry `{}`", rec.name)));
            }
            for (k, _, _) in &rec.samples {
                if !rec.bounds.iter().any(|(b, _)| b == k) {
                    return Err(data_err(i + 1, format!("sample for unknown parameter `{k}`")));
                }
            }
            if rec.samples.len() != rec.bounds.len() {
                return Err(data_err(i + 1, "every parameter needs a sample range"));
            }
            for point in rec.sample_points() {
                rec.instantiate(&point)?;
            }
            records.push(rec);
        }
        Ok(Catalog { records })
    }

    pub fn names(&self) -> Vec<&str> {
        self.records.iter().map(|r| r.name.as_str()).collect()
    }

    /// Parameter names of an entry.
    pub fn params_of(&self, name: &str) -> Result<Vec<String>> {
        let rec = self.record(name)?;
        Ok(rec.bounds.iter().map(|(k, _)| k.clone()).collect())
    }

    fn record(&self, name: &str) -> Result<&Record> {
        self.records
            .iter()
            .find(|r| r.name.eq_ignore_ascii_case(name))
            .ok_or_else(|| Error::UnknownEntry(name.to_string()))
    }

    pub fn lookup(&self, name: &str, params: &[(&str, i64)]) -> Result<SpaceEntry> {
        let rec = self.record(name)?;
        let map: BTreeMap<String, i64> = params.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        rec.instantiate(&map)
    }

    /// Concrete entries at the sample parameters, in file order.
    pub fn list(&self, filter: &Filter) -> Vec<SpaceEntry> {
        let mut out = Vec::new();
        for rec in &self.records {
            if filter.table.is_some_and(|t| t != rec.table) {
                continue;
            }
            if filter.commutative_only && rec.structure != Structure::CommutativeParabolic {
                continue;
            }
            for point in rec.sample_points() {
                let e = rec.instantiate(&point).expect("validated at load");
                if filter.max_rank.is_some_and(|m| e.rank > m) {
                    continue;
                }
                out.push(e);
            }
        }
        out
    }
}

/// The built-in catalog.
pub fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| Catalog::parse(DATA).expect("built-in catalog data is valid"))
}

/// `b_Y = prod_{j=0}^{r} (X0 + .. + Xj + j d/2)` with normalization constant 1.
pub fn by_formula(entry: &SpaceEntry) -> Result<RatPoly> {
    let (Some(degrees), Some(d_half)) = (&entry.degrees, entry.d_half()) else {
        return Err(Error::FormulaUnavailable(entry.label()));
    };
    if !entry.commutative_parabolic() {
        return Err(Error::FormulaUnavailable(entry.label()));
    }
    Ok(product_formula(degrees.len() - 1, &d_half))
}

/// `prod_{j=0}^{r} (X0 + .. + Xj + j * d_half)`.
pub fn product_formula(r: usize, d_half: &Rational) -> RatPoly {
    let mut out = RatPoly::one();
    let mut partial = RatPoly::zero();
    for j in 0..=r {
        partial += RatPoly::var(&xvar(j));
        out = out * (&partial + &RatPoly::constant(d_half * Rational::from_integer((j as i64).into())));
    }
    out
}

pub fn to_space_params(entry: &SpaceEntry) -> Result<Arc<SpaceParams>> {
    let b = by_formula(entry)?;
    SpaceParams::new(entry.degrees.clone().expect("commutative entries carry degrees"), b)
}

/// Space parameters from a user-supplied `b_Y`; `degrees` is required for
/// entries whose degree sequence is not known.
pub fn with_b_y(entry: &SpaceEntry, b_y: RatPoly, degrees: Option<Vec<i64>>) -> Result<Arc<SpaceParams>> {
    let degrees = match (degrees, &entry.degrees) {
        (Some(d), Some(known)) if &d != known => {
            return Err(Error::ParameterMismatch(format!("degrees {d:?} differ from {known:?}")))
        }
        (Some(d), _) => d,
        (None, Some(known)) => known.clone(),
        (None, None) => return Err(Error::FormulaUnavailable(entry.label())),
    };
    if degrees.first() != Some(&entry.d0) {
        return Err(Error::ParameterMismatch(format!("d0 = {} but degrees start with {:?}", entry.d0, degrees.first())));
    }
    SpaceParams::new(degrees, b_y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::rat;

    #[test]
    fn loads() {
        assert!(catalog().names().len() >= 19);
    }

    #[test]
    fn det3() {
        let e = catalog().lookup("det", &[("n", 3)]).unwrap();
        assert_eq!((e.rank, e.dim, e.d0), (3, 9, 3));
        assert_eq!(e.degrees, Some(vec![3, 2, 1]));
        assert_eq!(e.d_param, Some(rat(2)));
        assert!(e.regular);
        assert_eq!(e.oracle, Some(InstanceKind::Det(3)));
    }

    #[test]
    fn quad5_and_e7() {
        let q = catalog().lookup("quad", &[("m", 5)]).unwrap();
        assert_eq!((q.rank, q.d0), (2, 2));
        assert_eq!(q.degrees, Some(vec![2, 1]));
        assert_eq!(q.d_param, Some(rat(3)));
        let e7 = catalog().lookup("E7", &[]).unwrap();
        assert_eq!((e7.rank, e7.dim, e7.d0), (3, 27, 3));
        assert_eq!(e7.d_param, Some(rat(8)));
    }

    #[test]
    fn lookup_errors() {
        assert_eq!(catalog().lookup("nope", &[]), Err(Error::UnknownEntry("nope".into())));
        assert!(catalog().lookup("det", &[]).is_err());
        assert!(catalog().lookup("det", &[("n", 1)]).is_err());
        assert!(catalog().lookup("det", &[("n", 2), ("m", 2)]).is_err());
    }

    #[test]
    fn formulas() {
        let p = |s: &str| parse(s).unwrap();
        let det2 = catalog().lookup("det", &[("n", 2)]).unwrap();
        assert_eq!(by_formula(&det2).unwrap(), p("X0*(X0+X1+1)"));
        let quad4 = catalog().lookup("quad", &[("m", 4)]).unwrap();
        assert_eq!(by_formula(&quad4).unwrap(), p("X0*(X0+X1+1)"));
        let pf4 = catalog().lookup("pf", &[("p", 2)]).unwrap();
        assert_eq!(by_formula(&pf4).unwrap(), p("X0*(X0+X1+2)"));
        let det3 = catalog().lookup("det", &[("n", 3)]).unwrap();
        let s = to_space_params(&det3).unwrap();
        assert_eq!(s.degrees, vec![3, 2, 1]);
        assert_eq!(s.b_y, p("X0*(X0+X1+1)*(X0+X1+X2+2)"));
        let sym2 = catalog().lookup("sym", &[("n", 2)]).unwrap();
        assert_eq!(to_space_params(&sym2).unwrap().b_y, p("X0*(X0+X1+1/2)"));
    }

    #[test]
    fn non_commutative_entries() {
        for name in ["spin7", "spin9", "g2", "sl4_sp4"] {
            let e = catalog().lookup(name, &[]).unwrap();
            assert!(matches!(by_formula(&e), Err(Error::FormulaUnavailable(_))), "{name}");
            assert!(e.degrees.is_none());
        }
        let g2 = catalog().lookup("g2", &[]).unwrap();
        let b = parse("X0*(X0+X1+5/2)").unwrap();
        let s = with_b_y(&g2, b.clone(), Some(vec![2, 1])).unwrap();
        assert_eq!(s.b_y, b);
        assert!(with_b_y(&g2, b, None).is_err());
    }

    #[test]
    fn listing() {
        let all = catalog().list(&Filter::default());
        let comm = catalog().list(&Filter { commutative_only: true, max_rank: Some(5), ..Default::default() });
        assert!(comm.len() < all.len());
        assert!(comm.iter().all(|e| e.commutative_parabolic() && e.rank <= 5));
        assert!(comm.iter().any(|e| e.name == "E7"));
        let t3 = catalog().list(&Filter { table: Some(3), ..Default::default() });
        assert!(t3.iter().all(|e| e.table == 3));
    }

    #[test]
    fn malformed_data_fails_fast() {
        assert!(Catalog::parse("x | 2 | - | 2 | 3 | 2 | yes | commutative | - | g").is_err());
        assert!(Catalog::parse("x | 2 | - | 3 | 3 | 2 | yes | commutative | - | g | i").is_err());
        assert!(Catalog::parse("x | 2 | n>=2 | n | n | 2 | maybe | none | n=2..3 | g | i").is_err());
        assert!(Catalog::parse("x | 2 | n>=2 | n | n/2 | 2 | yes | none | n=2..3 | g | i").is_err());
    }
}
