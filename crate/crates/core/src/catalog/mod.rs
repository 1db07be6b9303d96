//! Fixtures for every object the toolkit checks, stored as plain text and
//! parsed on first use.

mod dsl;
mod fixtures;

use std::sync::OnceLock;

use crate::algebra::{discriminator, Algebra};
use crate::degeneration::{
    verify_degeneration, DegenerationReport, DegenerationStatus, StructurePredicate,
};
use crate::error::{Error, Result};
use crate::exactmath::sample::Sampler;
use crate::exactmath::{q, Field, GaussianRational as G, RatFunc};
use crate::expr::Expr;

pub use dsl::{
    parse_algebra, parse_algebras, parse_witness, parse_witnesses, scalar_expr, CatalogEntry,
    Product, WitnessEntry,
};
pub use fixtures::{
    parse_fixtures, render_orbit, AutEntry, ExtensionFixture, FixtureSet, LabelSet, NamedPredicate,
};

pub const ALGEBRAS_SRC: &str = include_str!("data/algebras.txt");
pub const WITNESSES_SRC: &str = include_str!("data/witnesses.txt");
pub const ORBITS_SRC: &str = include_str!("data/orbits.txt");
pub const PREDICATES_SRC: &str = include_str!("data/predicates.txt");
pub const SEPARATIONS_SRC: &str = include_str!("data/separations.txt");

/// Names of the 4-dimensional classification, in table order.
pub fn table_a_names() -> Vec<String> {
    (1..=18).map(|k| format!("J4_{k:02}")).collect()
}

/// The small algebras the 4-dimensional ones are built from.
pub const SMALL_ALGEBRAS: [&str; 6] = ["J2s_01", "J3s_01", "J3s_02", "J3s_03", "J3s_04", "J3_01"];

/// The 2-step nilpotent families; both readings of the second are kept.
pub const FAMILIES: [&str; 3] = ["N2", "N3", "N3_proof"];

#[derive(Debug)]
pub struct Catalog {
    pub algebras: Vec<CatalogEntry>,
    pub witnesses: Vec<WitnessEntry>,
    pub fixtures: FixtureSet,
}

impl Catalog {
    pub fn parse(algebras: &str, witnesses: &str, fixtures: &str) -> Result<Self> {
        let algebras = parse_algebras(algebras)?;
        let witnesses = parse_witnesses(witnesses)?;
        let resolver = |name: &str| {
            algebras
                .iter()
                .find(|e| e.name == name && !e.is_family())
                .and_then(|e| e.algebra().ok())
        };
        let fixtures = parse_fixtures(fixtures, &resolver)?;
        let cat = Catalog {
            algebras,
            witnesses,
            fixtures,
        };
        for w in &cat.witnesses {
            for n in [&w.witness.source, &w.witness.target] {
                if cat.entry(n).is_none() {
                    return Err(Error::UnknownEntry(n.clone()));
                }
            }
        }
        for e in &cat.fixtures.extensions {
            if cat.entry(&e.target).is_none() {
                return Err(Error::UnknownEntry(e.target.clone()));
            }
        }
        Ok(cat)
    }

    pub fn entry(&self, name: &str) -> Option<&CatalogEntry> {
        self.algebras.iter().find(|e| e.name == name)
    }

    /// The concrete algebra of a parameter-free entry.
    pub fn algebra(&self, name: &str) -> Result<Algebra> {
        self.entry(name)
            .ok_or_else(|| Error::UnknownEntry(name.to_string()))?
            .algebra()
    }

    pub fn table_a(&self) -> Vec<(String, Algebra)> {
        table_a_names()
            .into_iter()
            .map(|n| {
                let a = self
                    .algebra(&n)
                    .expect("builtin table entries are concrete");
                (n, a)
            })
            .collect()
    }

    pub fn predicate(&self, name: &str) -> Option<&StructurePredicate> {
        self.fixtures.predicate(name)
    }

    /// Checks a witness against this catalog's entries.
    pub fn check_witness(&self, w: &WitnessEntry, samples: &[G]) -> Result<DegenerationReport> {
        check_witness(&|n: &str| self.entry(n), w, samples)
    }
}

/// Checks a witness whose algebras are resolved by `lookup`. Family
/// sources are specialised along the witness index, or at each of
/// `samples` when there is none.
pub fn check_witness<'a>(
    lookup: &dyn Fn(&str) -> Option<&'a CatalogEntry>,
    w: &WitnessEntry,
    samples: &[G],
) -> Result<DegenerationReport> {
    let source =
        lookup(&w.witness.source).ok_or_else(|| Error::UnknownEntry(w.witness.source.clone()))?;
    let target =
        lookup(&w.witness.target).ok_or_else(|| Error::UnknownEntry(w.witness.target.clone()))?;
    if target.is_family() {
        return Err(Error::Invalid(format!(
            "target `{}` must be a single algebra",
            target.name
        )));
    }
    let target = target.algebra()?;
    if let Some((param, f)) = w.witness.index_function()? {
        let lifted = source.instantiate_with(&|n: &str| (n == param).then(|| f.clone()))?;
        return verify_degeneration(&lifted, &target, &w.witness.rows);
    }
    if !source.is_family() {
        let lifted = source
            .algebra()?
            .map_scalars(|c| RatFunc::constant(c.clone()));
        return verify_degeneration(&lifted, &target, &w.witness.rows);
    }
    let mut last = None;
    for s in samples {
        let a = match source.at(s) {
            Ok(a) => a,
            Err(Error::EvaluationPole(_)) => continue,
            Err(e) => return Err(e),
        };
        let r = verify_degeneration(
            &a.map_scalars(|c| RatFunc::constant(c.clone())),
            &target,
            &w.witness.rows,
        )?;
        if r.status != DegenerationStatus::Pass {
            let mut r = r;
            r.diagnostics
                .insert(0, format!("at {} = {s}", source.params.join(",")));
            return Ok(r);
        }
        last = Some(r);
    }
    last.ok_or_else(|| Error::Invalid("no usable parameter sample".into()))
}

/// The catalog shipped with the crate.
pub fn builtin_catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let fixtures = format!("{ORBITS_SRC}\n{PREDICATES_SRC}");
        Catalog::parse(ALGEBRAS_SRC, WITNESSES_SRC, &fixtures).expect("builtin catalog parses")
    })
}

/// Two algebras with equal fingerprints and the discriminator that
/// separates them, with its frozen values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub left: String,
    pub right: String,
    pub discriminator: String,
    pub values: (usize, usize),
}

/// Lines of the form `LEFT RIGHT DISCRIMINATOR VALUE VALUE`.
pub fn parse_separations(text: &str) -> Result<Vec<Separation>> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: &str| Error::Parse {
            line: k + 1,
            column: 1,
            message: message.to_string(),
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [left, right, name, x, y] = fields[..] else {
            return Err(err("expected `LEFT RIGHT DISCRIMINATOR VALUE VALUE`"));
        };
        if discriminator(name).is_none() {
            return Err(err(&format!("unknown discriminator `{name}`")));
        }
        let value = |v: &str| {
            v.parse::<usize>()
                .map_err(|_| err(&format!("`{v}` is not a count")))
        };
        out.push(Separation {
            left: left.to_string(),
            right: right.to_string(),
            discriminator: name.to_string(),
            values: (value(x)?, value(y)?),
        });
    }
    Ok(out)
}

pub fn builtin_separations() -> &'static [Separation] {
    static SEPARATIONS: OnceLock<Vec<Separation>> = OnceLock::new();
    SEPARATIONS
        .get_or_init(|| parse_separations(SEPARATIONS_SRC).expect("builtin separations parse"))
}

/// `e_i e_j = e_{i+j}` for `i + j ≤ n`.
pub fn jn_entry(n: usize) -> CatalogEntry {
    let mut products = Vec::new();
    for i in 1..n {
        for j in 1..=n - i {
            products.push(Product {
                left: i,
                right: j,
                terms: vec![(Expr::Int(1.into()), i + j)],
            });
        }
    }
    CatalogEntry {
        name: format!("J{n}"),
        dim: n,
        params: Vec::new(),
        products,
        note: None,
    }
}

pub fn jn(n: usize) -> Algebra {
    jn_entry(n).algebra().expect("constant template")
}

/// Fixed evaluation points for one-parameter families.
pub fn fixed_param_samples() -> Vec<G> {
    vec![
        G::zero(),
        G::one(),
        G::from_i64(-1),
        G::from_i64(2),
        q(7, 3),
        G::i(),
    ]
}

/// The fixed points followed by `extra` seeded rationals, all distinct.
pub fn param_samples(seed: u64, extra: usize) -> Vec<G> {
    let mut out = fixed_param_samples();
    let mut s = Sampler::for_label(seed, "parameter samples");
    let target = out.len() + extra;
    while out.len() < target {
        let v = G::from_rational(s.nonzero_rational());
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

pub const DEFAULT_EXTRA_PARAM_SAMPLES: usize = 4;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_ncj;
    use crate::exactmath::sample::DEFAULT_SEED;

    #[test]
    fn builtin_counts() {
        let c = builtin_catalog();
        assert_eq!(c.table_a().len(), 18);
        assert_eq!(c.witnesses.len(), 11);
        assert_eq!(
            c.entry("J3s_04").unwrap().params,
            vec!["lambda".to_string()]
        );
        assert_eq!(c.fixtures.extensions.len(), 17);
        assert!(c.predicate("R1").is_some() && c.predicate("R2").is_some());
        assert!(c.entry("J4_01").unwrap().note.is_some());
    }

    #[test]
    fn instantiation_examples() {
        let c = builtin_catalog();
        let j = c.entry("J3s_04").unwrap().at(&G::zero()).unwrap();
        assert_eq!(j.nonzero_products().count(), 2);
        let n3 = c.entry("N3").unwrap().at(&G::zero()).unwrap();
        assert_eq!(n3.nonzero_products().count(), 2);
        assert_eq!(jn(4).constants(), c.algebra("J4_18").unwrap().constants());
        assert!(check_ncj(&jn(6)));
    }

    #[test]
    fn separations_parse_and_reject_unknown_names() {
        assert_eq!(builtin_separations().len(), 5);
        assert!(matches!(
            parse_separations("J4_02 J4_08 nope 1 2"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(parse_separations("J4_02 J4_08 sym_ann 1").is_err());
    }

    #[test]
    fn samples_are_distinct_and_seeded() {
        let a = param_samples(DEFAULT_SEED, 4);
        assert_eq!(a.len(), 10);
        assert_eq!(a, param_samples(DEFAULT_SEED, 4));
        for (k, x) in a.iter().enumerate() {
            assert!(!a[k + 1..].contains(x));
        }
    }

    #[test]
    fn builtin_round_trips() {
        let c = builtin_catalog();
        for e in &c.algebras {
            assert_eq!(&parse_algebra(&e.render()).unwrap(), e);
        }
        for w in &c.witnesses {
            assert_eq!(&parse_witness(&w.render()).unwrap(), w);
        }
    }
}
