//! Implementations of the individual subcommands. Every command returns a
//! [`Report`]; an optional CSV rendering mirrors the JSON fields row by row.

use serde_json::json;

use bp_core::modules::{
    default_jacobi_levels, iterate_quotient, null_vector_report, top_dimension,
    twist_module, verify_module_jacobi, ModuleContext, ModuleKind, TopDimension, Truncation,
    TwistOutcome,
};
use bp_core::ope::{
    pin_flow_constants, verify_bracket_table, BracketEngine, FieldId, ModeSymbol,
};
use bp_core::scalars::{Rational, Scalar};
use bp_core::weights::{
    central_charge, central_charge_at_level, crucial_shift_report, enumerate_simples,
    flow_weight, h_fun, h_fun_expanded, xi_chi, Level,
};

use crate::report::{Report, Verdict};
use crate::CliError;

fn level_from_p(p: u64) -> Result<Level, CliError> {
    Level::new(p).map_err(|e| CliError::Usage(e.to_string()))
}

fn parse_rational(s: &str) -> Result<Rational, CliError> {
    s.parse::<Rational>()
        .map_err(|e| CliError::Usage(format!("invalid rational {s:?}: {e}")))
}

/// `brackets`: export the derived bracket table in the L-basis.
pub fn brackets(grid: i64) -> Result<(Report, Vec<Vec<String>>), CliError> {
    let engine = BracketEngine::new();
    let fams = [FieldId::J, FieldId::L, FieldId::GPlus, FieldId::GMinus];
    let mut entries = Vec::new();
    let mut rows: Vec<Vec<String>> = vec![vec![
        "a_family".into(),
        "a_index".into(),
        "b_family".into(),
        "b_index".into(),
        "kind".into(),
        "family_or_index".into(),
        "index".into(),
        "coeff".into(),
    ]];
    for a in fams {
        for b in fams {
            for m in -grid..=grid {
                for n in -grid..=grid {
                    let e = engine
                        .bracket(ModeSymbol::new(a, m), ModeSymbol::new(b, n))
                        .expect("generator bracket");
                    let mut terms = Vec::new();
                    for (sym, c) in &e.linear {
                        terms.push(json!({
                            "family": sym.family.symbol(),
                            "index": sym.index,
                            "coeff": c.to_string(),
                        }));
                        rows.push(vec![
                            a.symbol().into(),
                            m.to_string(),
                            b.symbol().into(),
                            n.to_string(),
                            "mode".into(),
                            sym.family.symbol().into(),
                            sym.index.to_string(),
                            c.to_string(),
                        ]);
                    }
                    let mut jj = Vec::new();
                    for (l, c) in &e.j_squared {
                        jj.push(json!({"index": l, "coeff": c.to_string()}));
                        rows.push(vec![
                            a.symbol().into(),
                            m.to_string(),
                            b.symbol().into(),
                            n.to_string(),
                            "jsquared".into(),
                            "(J^2)".into(),
                            l.to_string(),
                            c.to_string(),
                        ]);
                    }
                    if !e.central.is_zero() {
                        rows.push(vec![
                            a.symbol().into(),
                            m.to_string(),
                            b.symbol().into(),
                            n.to_string(),
                            "central".into(),
                            String::new(),
                            String::new(),
                            e.central.to_string(),
                        ]);
                    }
                    entries.push(json!({
                        "lhs": {"a": [a.symbol(), m], "b": [b.symbol(), n]},
                        "rhs_terms": terms,
                        "jj_terms": jj,
                        "central": e.central.to_string(),
                    }));
                }
            }
        }
    }
    let report = Report {
        command: "brackets".into(),
        inputs: json!({"grid": grid}),
        results: json!({"entries": entries}),
        verdict: Verdict::Verified,
        timing_ms: None,
    };
    Ok((report, rows))
}

/// `verify-brackets`: symbolic cross-validation against the closed-form list.
pub fn verify_brackets(grid: i64, inject_fault: Option<&str>) -> Result<(Report, Vec<Vec<String>>), CliError> {
    let engine = BracketEngine::new();
    let mut report = verify_bracket_table(&engine, grid)
        .map_err(|e| CliError::Internal(e.to_string()))?;
    if let Some(fault) = inject_fault {
        match fault {
            "gg-central" => {
                // pretend the alternate normalization were the reference:
                // the derived table must then mismatch on [G+_m, G-_n]
                for c in report.checks.iter_mut() {
                    if c.name == "[G+_m, G-_n]" {
                        c.ok = report.gg_central_alternate_matches;
                        report.ok &= c.ok;
                    }
                }
            }
            other => {
                return Err(CliError::Usage(format!("unknown fault {other:?}")));
            }
        }
    }
    let verdict = if report.ok {
        Verdict::Verified
    } else {
        Verdict::Mismatch
    };
    let mut rows = vec![vec!["check".to_string(), "ok".to_string()]];
    for c in &report.checks {
        rows.push(vec![c.name.clone(), c.ok.to_string()]);
    }
    let rep = Report {
        command: "verify-brackets".into(),
        inputs: json!({"grid": grid, "inject_fault": inject_fault}),
        results: serde_json::to_value(&report).expect("serializable"),
        verdict,
        timing_ms: None,
    };
    Ok((rep, rows))
}

/// `verify-jacobi`: module-level bracket soundness.
pub fn verify_jacobi(
    grid: i64,
    levels: &[String],
    vectors: usize,
    seed: u64,
) -> Result<(Report, Vec<Vec<String>>), CliError> {
    let levels: Vec<Rational> = if levels.is_empty() {
        default_jacobi_levels()
    } else {
        levels
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<_, _>>()?
    };
    for k in &levels {
        if *k == Rational::from_int(-3) {
            return Err(CliError::Usage("k = -3 is the excluded critical level".into()));
        }
    }
    let report = verify_module_jacobi(grid, seed, &levels, vectors);
    let verdict = if report.ok {
        Verdict::Verified
    } else {
        Verdict::Mismatch
    };
    let rows = vec![
        vec!["symbolic_pairs".to_string(), "specialized_pairs".to_string(), "failures".to_string()],
        vec![
            report.symbolic_pairs_checked.to_string(),
            report.specialized_pairs_checked.to_string(),
            report.failures.len().to_string(),
        ],
    ];
    let rep = Report {
        command: "verify-jacobi".into(),
        inputs: json!({
            "grid": grid,
            "levels": levels.iter().map(|k| k.to_string()).collect::<Vec<_>>(),
            "vectors": vectors,
            "seed": seed,
        }),
        results: serde_json::to_value(&report).expect("serializable"),
        verdict,
        timing_ms: None,
    };
    Ok((rep, rows))
}

/// `simples --p P`: the classification table.
pub fn simples(p: u64) -> Result<(Report, Vec<Vec<String>>), CliError> {
    let _ = level_from_p(p)?;
    let records = enumerate_simples(p).map_err(|e| CliError::Internal(e.to_string()))?;
    let mut out = Vec::new();
    let mut rows = vec![vec![
        "p".to_string(),
        "i".to_string(),
        "j".to_string(),
        "xi".to_string(),
        "chi".to_string(),
        "lambda_a1".to_string(),
        "lambda_a2".to_string(),
        "lambda_k".to_string(),
    ]];
    for r in &records {
        out.push(json!({
            "p": r.p,
            "i": r.i,
            "j": r.j,
            "xi": r.hw.xi.to_string(),
            "chi": r.hw.chi.to_string(),
            "lambda": [r.lam.a1.to_string(), r.lam.a2.to_string(), r.lam.level_coeff.to_string()],
        }));
        rows.push(vec![
            r.p.to_string(),
            r.i.to_string(),
            r.j.to_string(),
            r.hw.xi.to_string(),
            r.hw.chi.to_string(),
            r.lam.a1.to_string(),
            r.lam.a2.to_string(),
            r.lam.level_coeff.to_string(),
        ]);
    }
    let rep = Report {
        command: "simples".into(),
        inputs: json!({"p": p}),
        results: json!({"count": records.len(), "records": out}),
        verdict: Verdict::Verified,
        timing_ms: None,
    };
    Ok((rep, rows))
}

fn quotient_state(
    p: u64,
    labels: Option<(u32, u32)>,
    depth: Option<i64>,
    charge: Option<i64>,
) -> Result<(ModuleContext, bp_core::modules::QuotientState, Truncation), CliError> {
    let level = level_from_p(p)?;
    let trunc = Truncation::new(
        depth.unwrap_or(p as i64 - 2),
        charge.unwrap_or(p as i64),
    );
    let ctx = match labels {
        Some((i, j)) => {
            let hw = xi_chi(i, j, &level.k_scalar());
            ModuleContext::new(ModuleKind::Verma, hw, Some(level.k))
        }
        None => ModuleContext::vacuum(level.k),
    }
    .map_err(|e| CliError::Usage(e.to_string()))?;
    let state = iterate_quotient(&ctx, trunc);
    Ok((ctx, state, trunc))
}

/// `character`: graded dimensions of a simple quotient. With labels (i, j)
/// the Verma-type module at (xi_{i,j}, chi_{i,j}); without, the vacuum
/// module of the algebra itself.
pub fn character(
    p: u64,
    i: Option<u32>,
    j: Option<u32>,
    depth: Option<i64>,
    charge: Option<i64>,
) -> Result<(Report, Vec<Vec<String>>), CliError> {
    let labels = match (i, j) {
        (Some(i), Some(j)) => Some((i, j)),
        (None, None) => None,
        _ => {
            return Err(CliError::Usage(
                "provide both --i and --j, or neither for the vacuum module".into(),
            ))
        }
    };
    let (_, state, _) = quotient_state(p, labels, depth, charge)?;
    let dims = state.dims();
    let mut rows = vec![vec![
        "charge".to_string(),
        "depth".to_string(),
        "dim".to_string(),
    ]];
    for b in &dims {
        rows.push(vec![
            b.charge.to_string(),
            b.depth.to_string(),
            b.dim.to_string(),
        ]);
    }
    let rep = Report {
        command: "character".into(),
        inputs: json!({"p": p, "i": i, "j": j,
            "depth": state.trunc.max_depth, "charge": state.trunc.charge_window}),
        results: json!({
            "blocks": serde_json::to_value(&dims).expect("serializable"),
            "fixpoint_iterations": state.iterations,
        }),
        verdict: Verdict::Verified,
        timing_ms: None,
    };
    Ok((rep, rows))
}

/// `null-vector --p P`: membership of (G+_{-1})^{p-2} in the maximal
/// submodule of the vacuum module.
pub fn null_vector(
    p: u64,
    depth: Option<i64>,
    charge: Option<i64>,
) -> Result<(Report, Vec<Vec<String>>), CliError> {
    let (_, state, _) = quotient_state(p, None, depth, charge)?;
    let report = null_vector_report(&state, p);
    let verdict = if report.in_maximal_submodule {
        Verdict::Verified
    } else {
        // membership cannot be disproved inside a finite window
        Verdict::Inconclusive
    };
    let rows = vec![
        vec![
            "monomial".to_string(),
            "in_maximal_submodule".to_string(),
            "certificate_depth".to_string(),
            "gminus_block_dim".to_string(),
        ],
        vec![
            report.monomial.clone(),
            report.in_maximal_submodule.to_string(),
            report.certificate_depth.to_string(),
            report
                .gminus_block_dim
                .map(|d| d.to_string())
                .unwrap_or_else(|| "out-of-window".into()),
        ],
    ];
    let rep = Report {
        command: "null-vector".into(),
        inputs: json!({"p": p, "depth": state.trunc.max_depth, "charge": state.trunc.charge_window}),
        results: serde_json::to_value(&report).expect("serializable"),
        verdict,
        timing_ms: None,
    };
    Ok((rep, rows))
}

/// `top-dims --p P`: top-space dimensions of every classified module.
pub fn top_dims(p: u64, charge: Option<i64>) -> Result<(Report, Vec<Vec<String>>), CliError> {
    let level = level_from_p(p)?;
    let mut records = Vec::new();
    let mut rows = vec![vec![
        "i".to_string(),
        "j".to_string(),
        "computed".to_string(),
        "status".to_string(),
    ]];
    let mut verdict = Verdict::Verified;
    for rec in enumerate_simples(p).map_err(|e| CliError::Internal(e.to_string()))? {
        let hw = xi_chi(rec.i, rec.j, &level.k_scalar());
        let ctx = ModuleContext::new(ModuleKind::Verma, hw, Some(level.k.clone()))
            .map_err(|e| CliError::Internal(e.to_string()))?;
        let trunc = Truncation::new(2, charge.unwrap_or(p as i64));
        let state = iterate_quotient(&ctx, trunc);
        let (computed, status) = match top_dimension(&state) {
            TopDimension::Exact(d) => {
                let ok = d == rec.i;
                if !ok {
                    verdict = Verdict::Mismatch;
                }
                (Some(d), if ok { "ok" } else { "mismatch" })
            }
            TopDimension::Inconclusive => {
                verdict = verdict.combine(Verdict::Inconclusive);
                (None, "inconclusive")
            }
        };
        rows.push(vec![
            rec.i.to_string(),
            rec.j.to_string(),
            computed.map(|d| d.to_string()).unwrap_or_default(),
            status.to_string(),
        ]);
        records.push(json!({
            "i": rec.i,
            "j": rec.j,
            "expected": rec.i,
            "computed": computed,
            "status": status,
        }));
    }
    let rep = Report {
        command: "top-dims".into(),
        inputs: json!({"p": p}),
        results: json!({"records": records}),
        verdict,
        timing_ms: None,
    };
    Ok((rep, rows))
}

/// `spectral-flow`: twist the computed simple quotient and compare with the
/// closed-form weight map.
pub fn spectral_flow(
    p: u64,
    i: u32,
    j: u32,
    depth: Option<i64>,
    charge: Option<i64>,
    power: u32,
) -> Result<(Report, Vec<Vec<String>>), CliError> {
    let level = level_from_p(p)?;
    let (ctx, state, _) = quotient_state(
        p,
        Some((i, j)),
        depth.or(Some((p as i64 - 2).max(3))),
        charge,
    )?;
    let top = match top_dimension(&state) {
        TopDimension::Exact(d) => d,
        TopDimension::Inconclusive => {
            let rep = Report {
                command: "spectral-flow".into(),
                inputs: json!({"p": p, "i": i, "j": j, "power": power}),
                results: json!({"status": "top dimension inconclusive"}),
                verdict: Verdict::Inconclusive,
                timing_ms: None,
            };
            return Ok((rep, Vec::new()));
        }
    };
    // closed-form expectation: flow the weight `power` times, tracking the
    // top dimension through the (i, j) -> (j, ...) exchange only for the
    // first step; deeper steps use the empirically found weights
    let mut expected = xi_chi(i, j, &level.k_scalar());
    let mut top_now = top;
    for step in 0..power {
        expected = flow_weight(&expected, top_now, &level.k_scalar());
        if step == 0 {
            top_now = j; // the twist exchanges the labels (i, j)
        } else {
            // top dimension of deeper twists is certified empirically below
        }
    }
    let outcome = twist_module(&ctx, &state, power);
    let (verdict, results) = match &outcome {
        TwistOutcome::Found { weight, block } => {
            let matches = weight.xi == expected.xi && weight.chi == expected.chi;
            (
                if matches {
                    Verdict::Verified
                } else {
                    Verdict::Mismatch
                },
                json!({
                    "top_dim": top,
                    "power": power,
                    "twisted": {"xi": weight.xi.to_string(), "chi": weight.chi.to_string()},
                    "expected": {"xi": expected.xi.to_string(), "chi": expected.chi.to_string()},
                    "block": block,
                    "match": matches,
                }),
            )
        }
        TwistOutcome::Inconclusive { reason } => (
            Verdict::Inconclusive,
            json!({"status": "inconclusive", "reason": reason}),
        ),
    };
    let rows = vec![vec!["verdict".to_string()], vec![format!("{verdict:?}")]];
    let rep = Report {
        command: "spectral-flow".into(),
        inputs: json!({"p": p, "i": i, "j": j, "power": power}),
        results,
        verdict,
        timing_ms: None,
    };
    Ok((rep, rows))
}

/// `central-charge`: both closed forms of c at a level.
pub fn central_charge_cmd(
    p: Option<u64>,
    k: Option<&str>,
) -> Result<(Report, Vec<Vec<String>>), CliError> {
    let (inputs, results, verdict) = match (p, k) {
        (Some(p), None) => {
            let level = level_from_p(p)?;
            let c = central_charge_at_level(&level)
                .map_err(|e| CliError::Internal(e.to_string()))?;
            (
                json!({"p": p, "k": level.k.to_string()}),
                json!({"c": c.to_string(), "forms_equal": true}),
                Verdict::Verified,
            )
        }
        (None, Some(ks)) => {
            let k0 = parse_rational(ks)?;
            let c = central_charge(&Scalar::from_rational(k0.clone()))
                .map_err(|e| CliError::Usage(e.to_string()))?;
            (
                json!({"k": k0.to_string()}),
                json!({"c": c.as_rational().map(|r| r.to_string()).unwrap_or_else(|| c.to_string())}),
                Verdict::Verified,
            )
        }
        (None, None) => {
            let c = central_charge(&Scalar::variable())
                .map_err(|e| CliError::Internal(e.to_string()))?;
            (
                json!({"k": "symbolic"}),
                json!({"c": c.to_string()}),
                Verdict::Verified,
            )
        }
        _ => {
            return Err(CliError::Usage(
                "give exactly one of --p or --k (or neither for the symbolic form)".into(),
            ))
        }
    };
    let rows = vec![
        vec!["c".to_string()],
        vec![results["c"].as_str().unwrap_or_default().to_string()],
    ];
    let rep = Report {
        command: "central-charge".into(),
        inputs,
        results,
        verdict,
        timing_ms: None,
    };
    Ok((rep, rows))
}

/// `verify-all`: the aggregate verification battery.
pub fn verify_all(full: bool, inject_fault: Option<&str>) -> Result<(Report, Vec<Vec<String>>), CliError> {
    let mut checks: Vec<(String, Verdict)> = Vec::new();
    let push = |checks: &mut Vec<(String, Verdict)>, name: &str, ok: bool| {
        checks.push((
            name.to_string(),
            if ok { Verdict::Verified } else { Verdict::Mismatch },
        ));
    };

    // symbolic bracket table
    let engine = BracketEngine::new();
    let table = verify_bracket_table(&engine, 3).map_err(|e| CliError::Internal(e.to_string()))?;
    let mut table_ok = table.ok;
    if inject_fault == Some("gg-central") {
        table_ok &= table.gg_central_alternate_matches;
        push(&mut checks, "bracket-table [G+_m, G-_n] central term", table_ok);
    } else {
        push(&mut checks, "bracket-table", table_ok);
    }
    let pin = pin_flow_constants(&engine, 3).map_err(|e| CliError::Internal(e.to_string()))?;
    push(&mut checks, "flow-automorphism-constant", pin.matches_delta_form);

    // weight identities
    let kv = Scalar::variable();
    let mut h_ok = true;
    for i in 1..=8u32 {
        for xn in [-2i64, 0, 3] {
            for cn in [-1i64, 1, 2] {
                let xi = Scalar::ratio(xn, 3);
                let chi = Scalar::ratio(cn, 2);
                h_ok &= h_fun(i, &xi, &chi, &kv).unwrap() == h_fun_expanded(i, &xi, &chi, &kv).unwrap();
            }
        }
    }
    push(&mut checks, "h-averaged-vs-expanded", h_ok);

    let weight_ps: &[u64] = if full { &[3, 5, 7, 9] } else { &[3, 5] };
    for &p in weight_ps {
        let count_want = ((p - 1) * (p - 2) / 2) as usize;
        push(
            &mut checks,
            &format!("weights-roots-and-sl3-p{p}"),
            enumerate_simples(p).map(|r| r.len()) == Ok(count_want),
        );
        push(
            &mut checks,
            &format!("central-charge-p{p}"),
            central_charge_at_level(&Level::new(p).unwrap()).is_ok(),
        );
        let shift = crucial_shift_report(p).map_err(|e| CliError::Internal(e.to_string()))?;
        // at p = 3 the two candidate shifts coincide (2k+3 = 0), so only the
        // vanishing itself is checkable there
        push(
            &mut checks,
            &format!("vacuum-shift-third-not-half-p{p}"),
            shift.third_shift_vanishes && (p == 3 || !shift.half_shift_vanishes),
        );
    }

    // p = 3 collapse
    let ctx3 = ModuleContext::vacuum(Rational::new(-3, 2)).map_err(|e| CliError::Internal(e.to_string()))?;
    let st3 = iterate_quotient(&ctx3, Truncation::new(4, 5));
    let collapse_ok = st3
        .dims()
        .iter()
        .all(|b| b.dim == usize::from((b.charge, b.depth) == (0, 0)));
    push(&mut checks, "p3-vacuum-collapse", collapse_ok);

    // p = 5 null vector and top dimensions
    let ctx5 = ModuleContext::vacuum(Rational::new(-1, 2)).map_err(|e| CliError::Internal(e.to_string()))?;
    let st5 = iterate_quotient(&ctx5, Truncation::new(3, 5));
    push(
        &mut checks,
        "p5-null-vector",
        null_vector_report(&st5, 5).in_maximal_submodule,
    );
    let mut tops_ok = true;
    for (i, j) in [(1u32, 1u32), (1, 2), (1, 3), (2, 1), (2, 2), (3, 1)] {
        let level = Level::new(5).unwrap();
        let hw = xi_chi(i, j, &level.k_scalar());
        let ctx = ModuleContext::new(ModuleKind::Verma, hw, Some(level.k))
            .map_err(|e| CliError::Internal(e.to_string()))?;
        let st = iterate_quotient(&ctx, Truncation::new(2, 5));
        tops_ok &= top_dimension(&st) == TopDimension::Exact(i);
    }
    push(&mut checks, "p5-top-dimensions", tops_ok);

    // p = 5 twist of L(2/3, 0)
    {
        let level = Level::new(5).unwrap();
        let hw = xi_chi(1, 1, &level.k_scalar());
        let ctx = ModuleContext::new(ModuleKind::Verma, hw, Some(level.k))
            .map_err(|e| CliError::Internal(e.to_string()))?;
        let st = iterate_quotient(&ctx, Truncation::new(3, 4));
        let ok = matches!(
            twist_module(&ctx, &st, 1),
            TwistOutcome::Found { ref weight, .. } if weight.xi.is_zero() && weight.chi.is_zero()
        );
        push(&mut checks, "p5-spectral-flow-twist", ok);
    }

    if full {
        // module-level Jacobi sweep
        let jac = verify_module_jacobi(2, 0xB0_5EED, &default_jacobi_levels(), 2);
        push(&mut checks, "module-jacobi-grid2", jac.ok);
        // p = 7 null vector (the depth-5 stretch)
        let ctx7 = ModuleContext::vacuum(Rational::new(1, 2)).map_err(|e| CliError::Internal(e.to_string()))?;
        let st7 = iterate_quotient(&ctx7, Truncation::new(5, 7));
        push(
            &mut checks,
            "p7-null-vector",
            null_vector_report(&st7, 7).in_maximal_submodule,
        );
    }

    let verdict = checks
        .iter()
        .fold(Verdict::Verified, |acc, (_, v)| acc.combine(*v));
    let mut rows = vec![vec!["check".to_string(), "verdict".to_string()]];
    let mut check_json = Vec::new();
    for (name, v) in &checks {
        rows.push(vec![name.clone(), format!("{v:?}").to_lowercase()]);
        check_json.push(json!({"name": name, "verdict": v}));
    }
    let rep = Report {
        command: "verify-all".into(),
        inputs: json!({
            "profile": if full { "full" } else { "quick" },
            "inject_fault": inject_fault,
        }),
        results: json!({"checks": check_json}),
        verdict,
        timing_ms: None,
    };
    Ok((rep, rows))
}

pub fn csv_render(rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
