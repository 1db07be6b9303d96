//! Seeded property checks over the catalog, one record per property.

use super::{Check, CheckRecord, Config, Status};
use crate::algebra::{
    annihilator, basis_change, check_flexible, check_jordan_linearized, check_ncj, derivations,
    fingerprint, generated_subalgebra, power_chain, Algebra,
};
use crate::catalog::{
    jn, parse_algebra, parse_fixtures, parse_witness, Catalog, FAMILIES, SMALL_ALGEBRAS,
};
use crate::cohomology::{
    central_extension, central_extension_unchecked, coboundary_space, cocycle_action,
    cocycle_annihilator, cocycle_space, BilinearForm,
};
use crate::degeneration::{
    verify_degeneration, DegenerationStatus, DegenerationWitness, StructurePredicate,
};
use crate::exactmath::sample::Sampler;
use crate::exactmath::{Field, GaussianRational as G, Matrix, Polynomial, RatFunc, Subspace};

type Outcome = std::result::Result<String, String>;

/// A named property; `run` returns a one-line summary or the first failure.
pub struct Property {
    pub name: &'static str,
    pub claim: &'static str,
    pub run: fn(&Catalog, &Config) -> Outcome,
}

static PROPERTIES: [Property; 17] = [
    Property {
        name: "exact-division",
        claim: "(a/b)·b = a exactly for random rationals and Gaussian rationals",
        run: exact_division,
    },
    Property {
        name: "rank-nullity",
        claim: "rank + dim nullspace = columns, and the nullspace is unchanged by row reduction",
        run: rank_nullity,
    },
    Property {
        name: "ratfunc-canonical",
        claim: "equal rational functions built by different expressions have identical numerator and denominator",
        run: ratfunc_canonical,
    },
    Property {
        name: "linearization-soundness",
        claim: "linearized identity checks imply x(yx) = (xy)x and x²(yx) = (x²y)x on random elements",
        run: linearization_soundness,
    },
    Property {
        name: "fingerprint-invariance",
        claim: "fingerprints are unchanged by random basis changes",
        run: fingerprint_invariance,
    },
    Property {
        name: "annihilator-basis-change",
        claim: "the annihilator moves with the basis",
        run: annihilator_basis_change,
    },
    Property {
        name: "derivation-commutator",
        claim: "derivations are closed under commutators",
        run: derivation_commutator,
    },
    Property {
        name: "z2-iff-ncj",
        claim: "a form is a cocycle exactly when its central extension is a noncommutative Jordan algebra",
        run: z2_iff_ncj,
    },
    Property {
        name: "b2-dimension",
        claim: "dim B² = dim A²",
        run: b2_dimension,
    },
    Property {
        name: "quotient-recovery",
        claim: "dropping the new coordinates of a central extension gives back the base",
        run: quotient_recovery,
    },
    Property {
        name: "b2-aut-stability",
        claim: "automorphisms map coboundaries to coboundaries",
        run: b2_aut_stability,
    },
    Property {
        name: "annihilator-formula",
        claim: "Ann(A_θ) = (Ann(θ) ∩ Ann(A)) ⊕ V for every extension fixture",
        run: annihilator_formula,
    },
    Property {
        name: "parser-round-trip",
        claim: "rendering and reparsing every builtin fixture gives it back",
        run: parser_round_trip,
    },
    Property {
        name: "witness-reflexivity",
        claim: "the identity basis degenerates every catalog algebra to itself",
        run: witness_reflexivity,
    },
    Property {
        name: "witness-determinants",
        claim: "every stored parametrized basis has a determinant that is not identically zero",
        run: witness_determinants,
    },
    Property {
        name: "der-transitivity",
        claim: "along J4_07 -> J4_08 -> J4_03 the derivation dimension strictly increases",
        run: der_transitivity,
    },
    Property {
        name: "jn-one-generated",
        claim: "e1 generates J^n for n ≤ 6",
        run: jn_one_generated,
    },
];

pub fn properties() -> &'static [Property] {
    &PROPERTIES
}

pub(super) struct PropertySuite;

impl Check for PropertySuite {
    fn name(&self) -> &'static str {
        "properties"
    }
    fn criterion(&self) -> u8 {
        9
    }
    fn claim(&self) -> &'static str {
        "module invariants hold on seeded inputs"
    }
    fn run(&self, cat: &Catalog, cfg: &Config) -> Vec<CheckRecord> {
        use rayon::prelude::*;
        PROPERTIES
            .par_iter()
            .map(|p| {
                let (status, line) = match (p.run)(cat, cfg) {
                    Ok(s) => (Status::Pass, s),
                    Err(s) => (Status::Fail, s),
                };
                CheckRecord::new(format!("properties/{}", p.name), 9, p.claim, status).detail(line)
            })
            .collect()
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// The 4-dimensional table together with the small algebras.
fn concrete_algebras(cat: &Catalog) -> Vec<(String, Algebra)> {
    let mut out = cat.table_a();
    for n in SMALL_ALGEBRAS {
        if let Ok(a) = cat.algebra(n) {
            out.push((n.to_string(), a));
        }
    }
    out
}

/// Concrete algebras plus every family at the sample points.
fn all_members(cat: &Catalog, cfg: &Config) -> Vec<(String, Algebra)> {
    let mut out = concrete_algebras(cat);
    let mut families: Vec<&str> = FAMILIES.to_vec();
    families.push("J3s_04");
    for f in families {
        let Some(e) = cat.entry(f) else { continue };
        for s in cfg.param_samples() {
            if let Ok(a) = e.at(&s) {
                out.push((format!("{f}({s})"), a));
            }
        }
    }
    out
}

fn random_vector(s: &mut Sampler, n: usize) -> Vec<G> {
    (0..n).map(|_| s.any()).collect()
}

fn small_vector(s: &mut Sampler, n: usize) -> Vec<G> {
    (0..n).map(|_| s.small()).collect()
}

fn random_invertible(s: &mut Sampler, n: usize) -> Matrix<G> {
    loop {
        let rows = (0..n).map(|_| small_vector(s, n)).collect();
        let m = Matrix::from_rows_with_width(rows, n).expect("rows have length n");
        if m.is_invertible() {
            return m;
        }
    }
}

fn exact_division(_: &Catalog, cfg: &Config) -> Outcome {
    let mut s = Sampler::for_label(cfg.seed, "exact-division");
    for _ in 0..200 {
        let (a, b) = (s.rational(), s.nonzero_rational());
        let back = a.div(&b).map_err(|e| e.to_string())?.mul(&b);
        ensure(back == a, || format!("({a}/{b})·{b} = {back}"))?;
        let (x, y) = (s.any(), s.nonzero());
        let back = x.div(&y).map_err(|e| e.to_string())?.mul(&y);
        ensure(back == x, || format!("({x}/{y})·{y} = {back}"))?;
    }
    Ok("200 rational and 200 Gaussian quotients".into())
}

fn rank_nullity(_: &Catalog, cfg: &Config) -> Outcome {
    let mut s = Sampler::for_label(cfg.seed, "rank-nullity");
    for _ in 0..60 {
        let (r, c) = (1 + s.index(6), 1 + s.index(6));
        let mut rows: Vec<Vec<G>> = (0..r).map(|_| random_vector(&mut s, c)).collect();
        // Force some dependence so that ranks below min(r, c) occur.
        if r > 1 && s.index(2) == 0 {
            let k = s.any();
            rows[r - 1] = rows[0].iter().map(|x| x.mul(&k)).collect();
        }
        let m = Matrix::from_rows(rows).map_err(|e| e.to_string())?;
        let ns = m.nullspace();
        ensure(m.rank() + ns.dim() == c, || {
            format!("{r}×{c}: rank {} + nullity {}", m.rank(), ns.dim())
        })?;
        ensure(m.rref().matrix.nullspace() == ns, || {
            format!("{r}×{c}: row reduction changed the nullspace")
        })?;
    }
    Ok("60 random matrices up to 6×6".into())
}

fn random_poly(s: &mut Sampler) -> Polynomial<G> {
    let deg = s.index(4);
    Polynomial::new((0..=deg).map(|_| s.any()).collect())
}

fn ratfunc_canonical(_: &Catalog, cfg: &Config) -> Outcome {
    let mut s = Sampler::for_label(cfg.seed, "ratfunc-canonical");
    let mut tested = 0;
    while tested < 100 {
        let (p, q, r) = (
            random_poly(&mut s),
            random_poly(&mut s),
            random_poly(&mut s),
        );
        if q.is_zero() || r.is_zero() {
            continue;
        }
        tested += 1;
        let err = |e: crate::error::Error| e.to_string();
        let f = RatFunc::new(p.clone(), q.clone()).map_err(err)?;
        let g = RatFunc::new(r.clone(), q.clone()).map_err(err)?;
        // (p/q + r/q) against (p + r)/q, and (p/q)·(q/r) against p/r.
        let lhs = f.add(&g);
        let rhs = RatFunc::new(p.add(&r), q.clone()).map_err(err)?;
        ensure(lhs.num() == rhs.num() && lhs.den() == rhs.den(), || {
            format!("{lhs} vs {rhs}")
        })?;
        let lhs = f.mul(&RatFunc::new(q.clone(), r.clone()).map_err(err)?);
        let rhs = RatFunc::new(p.clone(), r.clone()).map_err(err)?;
        ensure(lhs.num() == rhs.num() && lhs.den() == rhs.den(), || {
            format!("{lhs} vs {rhs}")
        })?;
        let scaled = RatFunc::new(p.mul(&r), q.mul(&r)).map_err(err)?;
        ensure(scaled.num() == f.num() && scaled.den() == f.den(), || {
            format!("{scaled} vs {f}")
        })?;
    }
    Ok("100 random triples of polynomials".into())
}

fn linearization_soundness(cat: &Catalog, cfg: &Config) -> Outcome {
    let mut s = Sampler::for_label(cfg.seed, "linearization-soundness");
    let algebras = all_members(cat, cfg);
    let mut pairs = 0;
    for (name, a) in &algebras {
        if !(check_flexible(a) && check_jordan_linearized(a)) {
            return Err(format!("{name} fails a linearized identity"));
        }
        let n = a.dim();
        for _ in 0..200 {
            let (x, y) = (small_vector(&mut s, n), small_vector(&mut s, n));
            let xy = a.mul(&x, &y);
            let yx = a.mul(&y, &x);
            ensure(a.mul(&x, &yx) == a.mul(&xy, &x), || {
                format!("{name}: x(yx) != (xy)x")
            })?;
            let x2 = a.mul(&x, &x);
            ensure(a.mul(&x2, &yx) == a.mul(&a.mul(&x2, &y), &x), || {
                format!("{name}: x²(yx) != (x²y)x")
            })?;
            pairs += 1;
        }
    }
    Ok(format!(
        "{pairs} random pairs over {} algebras",
        algebras.len()
    ))
}

fn fingerprint_invariance(cat: &Catalog, cfg: &Config) -> Outcome {
    let mut s = Sampler::for_label(cfg.seed, "fingerprint-invariance");
    let algebras = concrete_algebras(cat);
    for (name, a) in &algebras {
        let f = fingerprint(a);
        for _ in 0..3 {
            let p = random_invertible(&mut s, a.dim());
            let b = basis_change(a, &p).map_err(|e| e.to_string())?;
            ensure(fingerprint(&b) == f, || {
                format!("{name}: {} became {}", f, fingerprint(&b))
            })?;
        }
    }
    Ok(format!(
        "3 basis changes for each of {} algebras",
        algebras.len()
    ))
}

/// Coordinates in the basis given by the rows of `p`: `x = x'·p`.
fn to_new_basis(p: &Matrix<G>, sub: &Subspace<G>) -> std::result::Result<Subspace<G>, String> {
    let inv = p.inverse().map_err(|e| e.to_string())?;
    let moved = sub
        .basis_vectors()
        .iter()
        .map(|v| inv.left_apply(v))
        .collect();
    Subspace::spanned_by(p.rows(), moved).map_err(|e| e.to_string())
}

fn annihilator_basis_change(cat: &Catalog, cfg: &Config) -> Outcome {
    let mut s = Sampler::for_label(cfg.seed, "annihilator-basis-change");
    let algebras = concrete_algebras(cat);
    for (name, a) in &algebras {
        let p = random_invertible(&mut s, a.dim());
        let b = basis_change(a, &p).map_err(|e| e.to_string())?;
        ensure(
            annihilator(&b) == to_new_basis(&p, &annihilator(a))?,
            || format!("{name}: annihilators differ"),
        )?;
    }
    Ok(format!("{} algebras", algebras.len()))
}

fn derivation_commutator(cat: &Catalog, _: &Config) -> Outcome {
    let algebras = concrete_algebras(cat);
    let mut checked = 0;
    for (name, a) in &algebras {
        let n = a.dim();
        let der = derivations(a);
        let mats: Vec<Matrix<G>> = der
            .basis_vectors()
            .into_iter()
            .map(|v| Matrix::from_fn(n, n, |i, l| v[i * n + l].clone()))
            .collect();
        for d1 in &mats {
            for d2 in &mats {
                let c = d1
                    .mul(d2)
                    .and_then(|x| d2.mul(d1).map(|y| (x, y)))
                    .map_err(|e| e.to_string())?;
                let flat: Vec<G> = (0..n * n)
                    .map(|k| c.0.get(k / n, k % n).sub(c.1.get(k / n, k % n)))
                    .collect();
                ensure(der.contains_vector(&flat), || {
                    format!("{name}: commutator leaves Der")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} commutators"))
}

fn z2_iff_ncj(cat: &Catalog, cfg: &Config) -> Outcome {
    let mut s = Sampler::for_label(cfg.seed, "z2-iff-ncj");
    let algebras = concrete_algebras(cat);
    let (mut cocycles, mut others) = (0, 0);
    for (name, a) in &algebras {
        let n = a.dim();
        let z2 = cocycle_space(a);
        let basis = z2.basis_vectors();
        // The whole basis for the bases of the classification, one random
        // combination for the 4-dimensional algebras.
        let mut forms: Vec<Vec<G>> = if n <= 3 { basis.clone() } else { Vec::new() };
        let coeffs: Vec<G> = basis.iter().map(|_| s.small()).collect();
        let combo = (0..n * n)
            .map(|k| {
                basis
                    .iter()
                    .zip(&coeffs)
                    .fold(G::zero(), |acc, (f, c)| acc.add(&f[k].mul(c)))
            })
            .collect();
        forms.push(combo);
        for f in forms {
            let theta = BilinearForm::from_vec(n, f).map_err(|e| e.to_string())?;
            let ext =
                central_extension(a, std::slice::from_ref(&theta)).map_err(|e| e.to_string())?;
            ensure(check_ncj(&ext), || {
                format!("{name}: extension by cocycle {theta} is not NCJ")
            })?;
            cocycles += 1;
        }
        let mut rejected = 0;
        let wanted = if n <= 3 { 20 } else { 5 };
        while rejected < wanted {
            let v = small_vector(&mut s, n * n);
            if z2.contains_vector(&v) {
                continue;
            }
            let theta = BilinearForm::from_vec(n, v).map_err(|e| e.to_string())?;
            ensure(
                central_extension(a, std::slice::from_ref(&theta)).is_err(),
                || format!("{name}: {theta} accepted"),
            )?;
            let ext = central_extension_unchecked(a, std::slice::from_ref(&theta));
            ensure(!check_ncj(&ext), || {
                format!("{name}: non-cocycle {theta} gives an NCJ extension")
            })?;
            rejected += 1;
        }
        others += rejected;
    }
    Ok(format!(
        "{cocycles} cocycles accepted, {others} non-cocycles rejected"
    ))
}

fn b2_dimension(cat: &Catalog, cfg: &Config) -> Outcome {
    let algebras = all_members(cat, cfg);
    for (name, a) in &algebras {
        let sq = power_chain(a).get(1).map_or(0, Subspace::dim);
        let b2 = coboundary_space(a).dim();
        ensure(b2 == sq, || format!("{name}: dim B² = {b2}, dim A² = {sq}"))?;
    }
    Ok(format!("{} algebras", algebras.len()))
}

fn quotient_recovery(cat: &Catalog, cfg: &Config) -> Outcome {
    let mut s = Sampler::for_label(cfg.seed, "quotient-recovery");
    let mut count = 0;
    for (name, a) in concrete_algebras(cat) {
        let n = a.dim();
        let z2 = cocycle_space(&a);
        if z2.is_zero() {
            continue;
        }
        let basis = z2.basis_vectors();
        for k in 1..=2 {
            let thetas: Vec<BilinearForm> = (0..k)
                .map(|_| {
                    let coeffs: Vec<G> = basis.iter().map(|_| s.any()).collect();
                    let v = (0..n * n)
                        .map(|i| {
                            basis
                                .iter()
                                .zip(&coeffs)
                                .fold(G::zero(), |acc, (b, c)| acc.add(&b[i].mul(c)))
                        })
                        .collect();
                    BilinearForm::from_vec(n, v).expect("length n²")
                })
                .collect();
            let ext = central_extension(&a, &thetas).map_err(|e| e.to_string())?;
            ensure(ext.truncate(n).constants() == a.constants(), || {
                format!("{name}: quotient differs")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} extensions"))
}

fn b2_aut_stability(cat: &Catalog, cfg: &Config) -> Outcome {
    let mut checked = 0;
    for aut in &cat.fixtures.auts {
        let base = cat.algebra(&aut.base).map_err(|e| e.to_string())?;
        let b2 = coboundary_space(&base);
        let n = base.dim();
        let mut s = Sampler::for_label(cfg.seed, &format!("b2-aut-stability {}", aut.family.name));
        let mut done = 0;
        while done < 20 {
            let env: Vec<(String, G)> = aut
                .family
                .params
                .iter()
                .map(|p| (p.clone(), s.any()))
                .collect();
            let look = |name: &str| env.iter().find(|(n, _)| n == name).map(|(_, v)| v.clone());
            let phi = aut.family.instantiate(&look).map_err(|e| e.to_string())?;
            if !phi.is_invertible() {
                continue;
            }
            for b in b2.basis_vectors() {
                let theta = BilinearForm::from_vec(n, b).map_err(|e| e.to_string())?;
                let moved = cocycle_action(&base, &phi, &theta).map_err(|e| e.to_string())?;
                ensure(b2.contains_vector(moved.as_vec()), || {
                    format!("{}: {theta} leaves B²", aut.family.name)
                })?;
            }
            done += 1;
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} automorphisms across {} families",
        cat.fixtures.auts.len()
    ))
}

fn annihilator_formula(cat: &Catalog, _: &Config) -> Outcome {
    for e in &cat.fixtures.extensions {
        let a = cat.algebra(&e.base).map_err(|x| x.to_string())?;
        let thetas = std::slice::from_ref(&e.form);
        let ext = central_extension(&a, thetas).map_err(|x| x.to_string())?;
        let n = a.dim();
        let inner = cocycle_annihilator(&a, thetas)
            .and_then(|c| c.intersect(&annihilator(&a)))
            .map_err(|x| x.to_string())?;
        let mut vectors: Vec<Vec<G>> = inner
            .basis_vectors()
            .into_iter()
            .map(|mut v| {
                v.push(G::zero());
                v
            })
            .collect();
        let mut new = vec![G::zero(); n + 1];
        new[n] = G::one();
        vectors.push(new);
        let expected = Subspace::spanned_by(n + 1, vectors).map_err(|x| x.to_string())?;
        ensure(annihilator(&ext) == expected, || {
            format!("{}: annihilator differs", e.target)
        })?;
    }
    Ok(format!(
        "{} extension fixtures",
        cat.fixtures.extensions.len()
    ))
}

fn parser_round_trip(cat: &Catalog, _: &Config) -> Outcome {
    for e in &cat.algebras {
        let again = parse_algebra(&e.render()).map_err(|x| format!("{}: {x}", e.name))?;
        ensure(&again == e, || format!("{} changed on round trip", e.name))?;
    }
    for w in &cat.witnesses {
        let again = parse_witness(&w.render()).map_err(|x| format!("{}: {x}", w.witness.name))?;
        ensure(&again == w, || {
            format!("{} changed on round trip", w.witness.name)
        })?;
    }
    let resolver = |name: &str| {
        cat.entry(name)
            .filter(|e| !e.is_family())
            .and_then(|e| e.algebra().ok())
    };
    let text = cat.fixtures.render();
    let again = parse_fixtures(&text, &resolver).map_err(|x| format!("fixtures: {x}"))?;
    ensure(again.render() == text, || {
        "fixtures changed on round trip".into()
    })?;
    for p in &cat.fixtures.predicates {
        let again = StructurePredicate::parse(&p.predicate.to_string())
            .map_err(|x| format!("{}: {x}", p.name))?;
        ensure(again == p.predicate, || {
            format!("{} changed on round trip", p.name)
        })?;
    }
    Ok(format!(
        "{} algebras, {} witnesses, {} orbit cases, {} predicates",
        cat.algebras.len(),
        cat.witnesses.len(),
        cat.fixtures.orbits.len(),
        cat.fixtures.predicates.len()
    ))
}

fn witness_reflexivity(cat: &Catalog, _: &Config) -> Outcome {
    let algebras = concrete_algebras(cat);
    for (name, a) in &algebras {
        let w = DegenerationWitness::identity(name, a.dim());
        let lifted = a.map_scalars(|c| RatFunc::constant(c.clone()));
        let r = verify_degeneration(&lifted, a, &w.rows).map_err(|e| e.to_string())?;
        ensure(r.status == DegenerationStatus::Pass, || {
            format!("{name}: {:?}", r.status)
        })?;
    }
    Ok(format!("{} algebras", algebras.len()))
}

fn witness_determinants(cat: &Catalog, _: &Config) -> Outcome {
    let mut vanishing = 0;
    for w in &cat.witnesses {
        let d = w.witness.determinant().map_err(|e| e.to_string())?;
        ensure(!d.is_zero(), || {
            format!("{}: determinant is zero", w.witness.name)
        })?;
        if d.evaluate_at(&G::zero()).map_or(true, |v| v.is_zero()) {
            vanishing += 1;
        }
    }
    Ok(format!(
        "{} witnesses, {vanishing} of them singular at t = 0",
        cat.witnesses.len()
    ))
}

fn der_transitivity(cat: &Catalog, cfg: &Config) -> Outcome {
    let samples = cfg.param_samples();
    let chain = ["J4_07", "J4_08", "J4_03"];
    let mut ders = Vec::new();
    for pair in chain.windows(2) {
        let w = cat
            .witnesses
            .iter()
            .find(|w| w.witness.source == pair[0] && w.witness.target == pair[1])
            .ok_or_else(|| format!("no witness {} -> {}", pair[0], pair[1]))?;
        let r = cat.check_witness(w, &samples).map_err(|e| e.to_string())?;
        ensure(r.status == DegenerationStatus::Pass, || {
            format!("{} does not verify", w.witness.name)
        })?;
    }
    for n in chain {
        let a = cat.algebra(n).map_err(|e| e.to_string())?;
        ders.push(crate::algebra::derivation_dim(&a));
    }
    ensure(ders[0] < ders[1] && ders[1] < ders[2], || {
        format!("dims {ders:?}")
    })?;
    Ok(format!("dim Der along the chain: {ders:?}"))
}

fn jn_one_generated(_: &Catalog, _: &Config) -> Outcome {
    for n in 1..=6 {
        let a = jn(n);
        let dim = generated_subalgebra(&a, &[a.unit_vector(0)]).dim();
        ensure(dim == n, || {
            format!("e1 generates a {dim}-dimensional subalgebra of J{n}")
        })?;
    }
    Ok("n = 1..6".into())
}
