//! Problem files: TOML with the sections `[dvr]`, `[ring]`, `[point]`,
//! `[module]`, `[chain]` and `[checks]`. The grammar is in `docs/problem-format.md`.

use serde::{Deserialize, Serialize};

use crate::algebra::{check_algebra, FinAlgebra, FinModule, Vector};
use crate::error::{Error, Result};
use crate::point::{point_kernel, OPoint};
use crate::poly::QPoly;
use crate::presentation::PolyPresentation;
use crate::scalar::{parse_scalar, Dvr, LocalScalar};
use crate::smith::OMatrix;

/// A scalar as written in a file: a TOML integer or a string `"a/b"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Int(i64),
    Text(String),
}

impl ScalarText {
    fn value(&self) -> Result<LocalScalar> {
        match self {
            ScalarText::Int(n) => Ok(LocalScalar::from_integer((*n).into())),
            ScalarText::Text(s) => parse_scalar(s),
        }
    }
}

fn scalars(v: &[ScalarText]) -> Result<Vector> {
    v.iter().map(ScalarText::value).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DvrSection {
    pub prime: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum RingSection {
    Table {
        basis: Vec<String>,
        /// `products[i][j]`: coordinates of `basis[i] * basis[j]`.
        products: Vec<Vec<Vec<ScalarText>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        unit: Option<Vec<ScalarText>>,
    },
    Poly {
        variables: Vec<String>,
        relations: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSection {
    pub values: Vec<ScalarText>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ModuleSection {
    Ring,
    Free {
        rank: usize,
    },
    /// `O^g` with `actions[i]` the `g x g` matrix (rows) of `basis[i]`.
    Table {
        actions: Vec<Vec<Vec<ScalarText>>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainSection {
    pub elements: Vec<String>,
}

fn yes() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

/// Cross-checks run unless switched off.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChecksSection {
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub identities: bool,
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub koszul: bool,
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub fitting: bool,
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub wiebe: bool,
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub oracle: bool,
    /// Elements `a` of the ring (basis coordinates) for a derived action of
    /// `A/(a)` on the Koszul complex of `a`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub derived_action: Vec<Vec<ScalarText>>,
}

impl Default for ChecksSection {
    fn default() -> Self {
        ChecksSection { identities: true, koszul: true, fitting: true, wiebe: true, oracle: true, derived_action: Vec::new() }
    }
}

/// The file as written, before validation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub dvr: DvrSection,
    pub ring: RingSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<PointSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<ChainSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<ChecksSection>,
}

fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| {
            let (line, column) = e.span().map_or((1, 1), |s| line_column(text, s.start));
            Error::Parse { line, column, message: e.message().to_string() }
        })
    }

    pub fn print(&self) -> String {
        toml::to_string(self).expect("problem files serialize")
    }
}

#[derive(Clone, Debug)]
pub enum Ring {
    Table(FinAlgebra),
    Poly(PolyPresentation),
}

#[derive(Clone, Debug)]
pub enum ModuleSpec {
    Free(usize),
    Table(Vec<OMatrix>),
}

/// A validated problem.
#[derive(Clone, Debug)]
pub struct Problem {
    pub dvr: Dvr,
    pub ring: Ring,
    /// Basis values of `λ` for a table ring; coordinates for a polynomial ring.
    pub point: Vector,
    pub module: ModuleSpec,
    pub chain: Option<Vec<QPoly>>,
    pub checks: ChecksSection,
}

fn matrix_rows(rows: &[Vec<ScalarText>]) -> Result<OMatrix> {
    let rows: Vec<Vector> = rows.iter().map(|r| scalars(r)).collect::<Result<_>>()?;
    if rows.iter().any(|r| r.len() != rows.len()) {
        return Err(Error::Dimension("action matrices must be square".into()));
    }
    Ok(OMatrix::from_rows(rows))
}

impl Problem {
    pub fn parse(text: &str) -> Result<Self> {
        Problem::from_file(&ProblemFile::parse(text)?)
    }

    pub fn from_file(f: &ProblemFile) -> Result<Self> {
        let dvr = Dvr::new(f.dvr.prime)
            .map_err(|_| Error::Validation(format!("prime = {} is not prime", f.dvr.prime)).in_section("dvr"))?;
        let point_section = f.point.as_ref().ok_or_else(|| Error::Validation("point required".into()))?;
        let point = scalars(&point_section.values).map_err(|e| e.in_section("point"))?;
        let ring = match &f.ring {
            RingSection::Table { basis, products, unit } => {
                let d = basis.len();
                let constants: Vec<Vec<Vector>> = products
                    .iter()
                    .map(|row| row.iter().map(|c| scalars(c)).collect::<Result<_>>())
                    .collect::<Result<_>>()
                    .map_err(|e| e.in_section("ring"))?;
                let unit = match unit {
                    Some(u) => scalars(u).map_err(|e| e.in_section("ring"))?,
                    None => (0..d).map(|i| LocalScalar::from_integer(((i == 0) as i64).into())).collect(),
                };
                let a = FinAlgebra::from_structure_constants(dvr.clone(), basis.clone(), constants, unit, vec![None; d])
                    .and_then(|a| check_algebra(&a).map(|_| a))
                    .map_err(|e| e.in_section("ring"))?;
                point_kernel(&a, point.clone()).map_err(|e| e.in_section("point"))?;
                Ring::Table(a)
            }
            RingSection::Poly { variables, relations } => {
                let rels = relations
                    .iter()
                    .map(|r| QPoly::parse(r, variables))
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| e.in_section("ring"))?;
                let p = PolyPresentation::new(dvr.clone(), variables.clone(), rels, point.clone()).map_err(|e| e.in_section("point"))?;
                Ring::Poly(p)
            }
        };
        let module = match &f.module {
            None | Some(ModuleSection::Ring) => ModuleSpec::Free(1),
            Some(ModuleSection::Free { rank }) if *rank > 0 => ModuleSpec::Free(*rank),
            Some(ModuleSection::Free { .. }) => return Err(Error::ZeroModule.in_section("module")),
            Some(ModuleSection::Table { actions }) => {
                let Ring::Table(a) = &ring else {
                    return Err(Error::Validation("table modules need a table ring".into()).in_section("module"));
                };
                let acts: Vec<OMatrix> = actions.iter().map(|m| matrix_rows(m)).collect::<Result<_>>().map_err(|e| e.in_section("module"))?;
                let g = acts.first().map_or(0, OMatrix::rows);
                FinModule::new(a, g, acts.clone(), OMatrix::zeros(g, 0)).map_err(|e| e.in_section("module"))?;
                ModuleSpec::Table(acts)
            }
        };
        let chain = match (&f.chain, &ring) {
            (None, _) => None,
            (Some(c), Ring::Poly(p)) => Some(
                c.elements
                    .iter()
                    .map(|e| QPoly::parse(e, p.names()))
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| e.in_section("chain"))?,
            ),
            (Some(_), Ring::Table(_)) => {
                return Err(Error::Validation("cut chains need a polynomial ring".into()).in_section("chain"));
            }
        };
        let checks = f.checks.clone().unwrap_or_default();
        if !checks.derived_action.is_empty() {
            let Ring::Table(a) = &ring else {
                return Err(Error::Validation("derived_action needs a table ring".into()).in_section("checks"));
            };
            for e in &checks.derived_action {
                let v = scalars(e).map_err(|e| e.in_section("checks"))?;
                if v.len() != a.rank() {
                    return Err(Error::Dimension(format!("derived_action elements need {} coordinates", a.rank())).in_section("checks"));
                }
            }
        }
        Ok(Problem { dvr, ring, point, module, chain, checks })
    }

    /// Elements listed under `derived_action`.
    pub fn derived_action_elements(&self) -> Vec<Vector> {
        self.checks.derived_action.iter().map(|e| scalars(e).expect("validated")).collect()
    }

    /// The point of a table ring.
    pub fn table_point(&self, a: &FinAlgebra) -> Result<OPoint> {
        point_kernel(a, self.point.clone())
    }

    pub fn module_over(&self, a: &FinAlgebra) -> Result<FinModule> {
        match &self.module {
            ModuleSpec::Free(r) => Ok(FinModule::free(a, *r)),
            ModuleSpec::Table(acts) => {
                let g = acts.first().map_or(0, OMatrix::rows);
                FinModule::new(a, g, acts.clone(), OMatrix::zeros(g, 0))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HYPER: &str = r#"
[dvr]
prime = 2

[ring]
kind = "poly"
variables = ["x"]
relations = ["x^2 - 2*x"]

[point]
values = [0]
"#;

    #[test]
    fn poly_problem() {
        let p = Problem::parse(HYPER).unwrap();
        let Ring::Poly(pres) = &p.ring else { panic!() };
        assert_eq!(pres.nvars(), 1);
        assert!(matches!(p.module, ModuleSpec::Free(1)));
        assert!(p.checks.koszul && p.checks.oracle);
    }

    #[test]
    fn missing_point() {
        let text = HYPER.replace("[point]\nvalues = [0]\n", "");
        assert_eq!(Problem::parse(&text).unwrap_err(), Error::Validation("point required".into()));
    }

    #[test]
    fn composite_prime() {
        let err = Problem::parse(&HYPER.replace("prime = 2", "prime = 4")).unwrap_err();
        assert!(err.to_string().contains("not prime"), "{err}");
        assert_eq!(err.class(), crate::ErrorClass::Input);
    }

    #[test]
    fn unknown_key_has_location() {
        let err = Problem::parse(&HYPER.replace("prime = 2", "prime = 2\ncolour = 1")).unwrap_err();
        let Error::Parse { line, .. } = err else { panic!("{err:?}") };
        assert_eq!(line, 4);
    }

    #[test]
    fn bad_point_is_located() {
        let table = r#"
[dvr]
prime = 2
[ring]
kind = "table"
basis = ["1", "x"]
products = [[[1, 0], [0, 1]], [[0, 1], [0, 2]]]
[point]
values = [1, 1]
"#;
        let err = Problem::parse(table).unwrap_err();
        assert!(matches!(&err, Error::InSection { section, source } if section == "point" && matches!(**source, Error::NotAlgebraMap(1, 1))));
        assert!(Problem::parse(&table.replace("[1, 1]", "[1, 2]")).is_ok());
    }

    #[test]
    fn print_parse_round_trip() {
        let text = format!("{HYPER}\n[module]\nkind = \"free\"\nrank = 2\n[chain]\nelements = []\n[checks]\nfitting = false\n");
        let f = ProblemFile::parse(&text).unwrap();
        assert_eq!(ProblemFile::parse(&f.print()).unwrap(), f);
        assert!(!f.checks.as_ref().unwrap().fitting);
    }
}
