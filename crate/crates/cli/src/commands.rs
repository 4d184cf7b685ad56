//! Implementations of the CLI subcommands.

use lovasz::approximation::{
    approx_chain, approx_closed_form, approx_normal_equations, residual_inner_products,
};
use lovasz::geometry::{inner_product_min, mc_inner_product};
use lovasz::interaction::{
    banzhaf_interaction, banzhaf_interaction_mobius, banzhaf_power, im_index, im_index_mobius,
    im_inverse, im_power, interaction_table, shapley_power, IndexForm, IndexKind,
};
use lovasz::set_function::{MinPolynomial, PointVector};
use lovasz::subset::{cardinality, full_mask, Mask};
use lovasz::{ratio, BigRational, Error};
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::document::{
    parse_subset_key, require_representation, Document, Representation,
};
use crate::rational::format_rational;
use crate::{ApproxMethod, CliError, EvalForm, IndexChoice};

fn validation(message: impl Into<String>) -> CliError {
    CliError::Validation(message.into())
}

fn library(err: Error) -> CliError {
    CliError::Validation(err.to_string())
}

pub fn cmd_mobius(doc: &Document) -> Result<String, CliError> {
    require_representation(doc, Representation::Game).map_err(validation)?;
    let v = doc.as_set_function().map_err(validation)?;
    let a = v.mobius_transform();
    Ok(Document::from_table(doc.n, Representation::Mobius, a.coefficients()).to_json())
}

pub fn cmd_zeta(doc: &Document) -> Result<String, CliError> {
    require_representation(doc, Representation::Mobius).map_err(validation)?;
    let a = doc.as_mobius().map_err(validation)?;
    let v = a.zeta_transform();
    Ok(Document::from_table(doc.n, Representation::Game, v.values()).to_json())
}

pub fn cmd_approx(doc: &Document, degree: usize, method: ApproxMethod) -> Result<String, CliError> {
    let a = doc.as_mobius().map_err(validation)?;
    let approximation = match method {
        ApproxMethod::Closed => approx_closed_form(&a, degree),
        ApproxMethod::Recursive => approx_chain(&a, degree),
        ApproxMethod::Oracle => approx_normal_equations(&a, degree),
    }
    .map_err(library)?;
    Ok(Document::from_min_polynomial(&approximation).to_json())
}

fn power_value(v: &lovasz::SetFunction, kind: IndexChoice, player: usize) -> Result<BigRational, CliError> {
    match kind {
        IndexChoice::ShapleyPower => shapley_power(v, player).map_err(library),
        IndexChoice::BanzhafPower => banzhaf_power(v, player).map_err(library),
        IndexChoice::ImPower => im_power(v, player).map_err(library),
        _ => unreachable!("interaction kinds handled separately"),
    }
}

pub fn cmd_index(
    doc: &Document,
    kind: IndexChoice,
    subset: Option<&str>,
) -> Result<String, CliError> {
    let v = doc.as_set_function().map_err(validation)?;
    let n = v.n();
    match kind {
        IndexChoice::Banzhaf | IndexChoice::Im => {
            let table_kind = if kind == IndexChoice::Banzhaf {
                IndexKind::Banzhaf
            } else {
                IndexKind::Im
            };
            if let Some(key) = subset {
                let mask = parse_subset_key(key, n).map_err(validation)?;
                let value = match table_kind {
                    IndexKind::Banzhaf => banzhaf_interaction(&v, mask, IndexForm::Mobius),
                    IndexKind::Im => im_index(&v, mask, IndexForm::Mobius),
                };
                Ok(format!("{}\n", format_rational(&value)))
            } else {
                let table = interaction_table(&v, table_kind, IndexForm::Mobius);
                let representation = match table_kind {
                    IndexKind::Banzhaf => Representation::Banzhaf,
                    IndexKind::Im => Representation::Im,
                };
                Ok(Document::from_table(n, representation, table.values()).to_json())
            }
        }
        IndexChoice::ShapleyPower | IndexChoice::BanzhafPower | IndexChoice::ImPower => {
            if let Some(key) = subset {
                let mask = parse_subset_key(key, n).map_err(validation)?;
                if cardinality(mask) != 1 {
                    return Err(validation(format!(
                        "power index {:?} takes a single player, got subset {key:?}",
                        kind.as_str()
                    )));
                }
                let player = mask.trailing_zeros() as usize;
                let value = power_value(&v, kind, player)?;
                Ok(format!("{}\n", format_rational(&value)))
            } else {
                let mut table = vec![BigRational::zero(); 1 << n];
                for player in 0..n {
                    table[1 << player] = power_value(&v, kind, player)?;
                }
                let representation = match kind {
                    IndexChoice::ShapleyPower => Representation::ShapleyPower,
                    IndexChoice::BanzhafPower => Representation::BanzhafPower,
                    _ => Representation::ImPower,
                };
                Ok(Document::from_table(n, representation, &table).to_json())
            }
        }
    }
}

pub fn cmd_inverse(doc: &Document) -> Result<String, CliError> {
    require_representation(doc, Representation::Im).map_err(validation)?;
    let table = doc.as_interaction_table().map_err(validation)?;
    let a = im_inverse(&table).map_err(library)?;
    Ok(Document::from_table(doc.n, Representation::Mobius, a.coefficients()).to_json())
}

pub fn cmd_eval(doc: &Document, point: &str, form: EvalForm) -> Result<String, CliError> {
    let a = doc.as_mobius().map_err(validation)?;
    let coords: Vec<f64> = point
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|_| validation(format!("point coordinate {part:?} is not a number")))
        })
        .collect::<Result<_, _>>()?;
    let x = PointVector::new(coords).map_err(library)?;
    let value = match form {
        EvalForm::Lovasz => a.eval_lovasz_minpoly(&x),
        EvalForm::Multilinear => a.eval_multilinear(&x),
    }
    .map_err(library)?;
    Ok(format!("{value:.14e}\n"))
}

/// Nudges the constant coefficient of a projection; used by the
/// verification negative control to demonstrate that the orthogonality
/// check really bites.
fn corrupt_projection(p: &MinPolynomial) -> MinPolynomial {
    let mut coeffs = p.coefficients().clone();
    let constant = coeffs.entry(0).or_insert_with(BigRational::zero);
    *constant += ratio(1, 1000);
    MinPolynomial::new(p.n(), p.degree(), coeffs).expect("same shape")
}

pub struct VerifyOptions {
    pub degree: usize,
    pub samples: usize,
    pub seed: u64,
    pub corrupt: bool,
}

pub fn cmd_verify(doc: &Document, options: &VerifyOptions) -> Result<String, CliError> {
    let a = doc.as_mobius().map_err(validation)?;
    let v = a.zeta_transform();
    let n = a.n();
    if options.degree > n {
        return Err(validation(format!(
            "degree {} out of range for n = {n}",
            options.degree
        )));
    }
    if options.samples < 100 {
        return Err(validation("need at least 100 Monte Carlo samples"));
    }

    let mut report = String::new();
    let mut failures = 0usize;
    fn record(report: &mut String, failures: &mut usize, line: String, ok: bool) {
        report.push_str(&line);
        report.push('\n');
        if !ok {
            *failures += 1;
        }
    }

    // Exact orthogonality of the projection residual.
    let clean = approx_closed_form(&a, options.degree).map_err(library)?;
    let checked = if options.corrupt {
        corrupt_projection(&clean)
    } else {
        clean.clone()
    };
    let residuals = residual_inner_products(&a, &checked).map_err(library)?;
    match residuals.iter().find(|(_, r)| !r.is_zero()) {
        None => record(
            &mut report,
            &mut failures,
            format!(
                "orthogonality (degree {}): PASS ({} residuals, all zero)",
                options.degree,
                residuals.len()
            ),
            true,
        ),
        Some((t, r)) => record(
            &mut report,
            &mut failures,
            format!(
                "orthogonality (degree {}): FAIL (residual {} against subset mask {:#b})",
                options.degree,
                format_rational(r),
                t
            ),
            false,
        ),
    }

    // Route agreement: recurrence chain and, where permitted, the dense
    // normal-equations solve must reproduce the closed form.
    let chained = approx_chain(&a, options.degree).map_err(library)?;
    record(
        &mut report,
        &mut failures,
        format!(
            "approximation routes (closed vs recursive): {}",
            if chained == clean { "PASS" } else { "FAIL" }
        ),
        chained == clean,
    );
    if n <= lovasz::approximation::MAX_ORACLE_PLAYERS {
        let solved = approx_normal_equations(&a, options.degree).map_err(library)?;
        record(
            &mut report,
            &mut failures,
            format!(
                "approximation routes (closed vs oracle): {}",
                if solved == clean { "PASS" } else { "FAIL" }
            ),
            solved == clean,
        );
    } else {
        report.push_str("approximation routes (closed vs oracle): SKIP (n > 10)\n");
    }

    // Monte Carlo spot checks of the basis inner products.
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let pairs = 6usize;
    let mut max_z = 0.0f64;
    let mut mc_ok = true;
    for _ in 0..pairs {
        let s: Mask = rng.gen_range(0..=full_mask(n));
        let t: Mask = rng.gen_range(0..=full_mask(n));
        let estimate = mc_inner_product(s, t, n, options.samples, rng.gen());
        let exact = inner_product_min(s, t).to_f64().expect("small rational");
        if estimate.std_error == 0.0 {
            mc_ok &= estimate.mean == exact;
        } else {
            let z = (estimate.mean - exact).abs() / estimate.std_error;
            max_z = max_z.max(z);
            mc_ok &= z <= 4.0;
        }
    }
    record(
        &mut report,
        &mut failures,
        format!(
            "inner products (Monte Carlo, {pairs} pairs x {} samples, seed {}): {} (max |z| = {max_z:.2})",
            options.samples,
            options.seed,
            if mc_ok { "PASS" } else { "FAIL" }
        ),
        mc_ok,
    );

    // Dual-form agreement for both interaction indices; the full lattice up
    // to n = 8, a seeded sample beyond.
    let subsets: Vec<Mask> = if n <= 8 {
        (0..=full_mask(n)).collect()
    } else {
        (0..200).map(|_| rng.gen_range(0..=full_mask(n))).collect()
    };
    let banzhaf_ok = subsets.iter().all(|&s| {
        banzhaf_interaction_mobius(&a, s) == banzhaf_interaction(&v, s, IndexForm::Derivative)
    });
    record(
        &mut report,
        &mut failures,
        format!(
            "banzhaf dual forms ({} subsets): {}",
            subsets.len(),
            if banzhaf_ok { "PASS" } else { "FAIL" }
        ),
        banzhaf_ok,
    );
    let im_ok = subsets
        .iter()
        .all(|&s| im_index_mobius(&a, s) == im_index(&v, s, IndexForm::Derivative));
    record(
        &mut report,
        &mut failures,
        format!(
            "im dual forms ({} subsets): {}",
            subsets.len(),
            if im_ok { "PASS" } else { "FAIL" }
        ),
        im_ok,
    );

    if failures == 0 {
        report.push_str("verification: all checks passed\n");
        Ok(report)
    } else {
        report.push_str(&format!("verification: {failures} check(s) failed\n"));
        Err(CliError::Verification(report))
    }
}
