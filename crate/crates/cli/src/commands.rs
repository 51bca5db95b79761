use std::sync::Arc;

use maltcat_core::algebra::{check_maltsev_term, is_homomorphism};
use maltcat_core::congruence::tc_commutator;
use maltcat_core::internal::{
    all_groupoid_structures, check_double_groupoid, check_two_groupoid_identities, check_variety_presentation,
    double_round_trip, groupoid_structure, is_two_groupoid, loday_encode_double, DoubleGroupoid, Levelwise,
};
use maltcat_core::io::{to_json, DoubleDoc};
use maltcat_core::natmaltsev::{commutator_cross_check, is_affine};
use maltcat_core::reflection::{coreflect, counit_bijection, reflect, unit_bijection};
use maltcat_core::{Congruence, Corner, DoubleReflexiveGraph};

use crate::{generate, suite, Cli, CliError, Command, Outcome, RunReport, Workspace};

pub fn dispatch(ws: &Workspace, cli: &Cli) -> Result<Outcome, CliError> {
    let report_only = |report| Outcome { report, document: None };
    match &cli.command {
        Command::Check { target } => cmd_check(ws, target, cli.verify_universal).map(report_only),
        Command::Reflect { double } => cmd_reflect(ws, double, cli.verify_universal, cli.out.is_some()),
        Command::Coreflect { double } => cmd_coreflect(ws, double, cli.verify_universal, cli.out.is_some()),
        Command::Commutator { algebra, r, s } => {
            cmd_commutator(ws, algebra, r, s, cli.verify_universal).map(report_only)
        }
        Command::Generate { kind, n, g, h, k } => generate::cmd_generate(*kind, *n, *g, *h, *k),
        Command::Suite { level } => Ok(report_only(suite::cmd_suite(ws, *level))),
    }
}

fn blocks_text(theta: &Congruence) -> String {
    let blocks: Vec<String> = theta
        .blocks()
        .iter()
        .map(|b| {
            format!(
                "{{{}}}",
                b.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
            )
        })
        .collect();
    blocks.join(" ")
}

fn sizes_text(sizes: [usize; 4]) -> String {
    format!("C11={} C10={} C01={} C00={}", sizes[0], sizes[1], sizes[2], sizes[3])
}

pub fn cmd_check(ws: &Workspace, target: &str, verify_universal: bool) -> Result<RunReport, CliError> {
    let mut report = RunReport::new(format!("check {target}"));
    if let Some(rejected) = ws.rejected.get(target) {
        report.check(
            format!("{} validates", rejected.kind),
            false,
            rejected.error.to_string(),
        );
        return Ok(report);
    }
    if let Some(dg) = ws.doubles.get(target) {
        check_double(&mut report, dg, verify_universal)?;
    } else if let Some(g) = ws.graphs.get(target) {
        report.fact("arrows", format!("{} ({})", g.arrows().name(), g.arrows().size()));
        report.fact("objects", format!("{} ({})", g.objects().name(), g.objects().size()));
        report.check("reflexive graph", true, "");
        let structure = groupoid_structure(g)?;
        report.note("groupoid", structure.is_some(), "");
        if verify_universal {
            let all = all_groupoid_structures(g)?;
            report.check(
                "at most one groupoid structure",
                all.len() <= 1,
                format!("{} found", all.len()),
            );
            report.check(
                "structure agrees with exhaustive search",
                all.len() == usize::from(structure.is_some()),
                "",
            );
        }
    } else if let Some(h) = ws.homomorphisms.get(target) {
        report.fact("map", format!("{} -> {}", h.dom().name(), h.cod().name()));
        report.check("homomorphism", is_homomorphism(h.map(), h.dom(), h.cod())?, "");
        report.note("injective", h.is_injective(), "");
        report.note("surjective", h.is_surjective(), "");
    } else if let Some(theta) = ws.congruences.get(target) {
        report.fact("algebra", theta.algebra().name());
        report.fact("blocks", blocks_text(theta));
        report.check("congruence", true, "");
    } else if let Some(a) = ws.algebras.get(target) {
        report.fact("size", a.size());
        report.fact("maltsev term", a.maltsev_term());
        report.check("Mal'tsev term", check_maltsev_term(a, a.maltsev_term())?, "");
        report.note("affine", is_affine(a).is_some(), "");
    } else {
        return Err(CliError::Unknown("object", target.to_string()));
    }
    Ok(report)
}

fn check_double(report: &mut RunReport, dg: &DoubleReflexiveGraph, verify_universal: bool) -> Result<(), CliError> {
    report.fact("corners", sizes_text(dg.corner_sizes()));
    report.check("double reflexive graph", true, "");
    let Some(gpd) = check_double_groupoid(dg)? else {
        report.check("double groupoid", false, "rows or columns admit no groupoid structure");
        return Ok(());
    };
    report.check("double groupoid", true, "");
    let two = is_two_groupoid(&gpd);
    report.note("2-groupoid", two, "");
    let l = loday_encode_double(&gpd)?;
    let presentation = check_variety_presentation(&l)?;
    report.check(
        "presentation identities",
        presentation.passed(),
        presentation.failures().join(", "),
    );
    report.check(
        "2-groupoid identities agree with the bottom row",
        check_two_groupoid_identities(&l)? == two,
        "",
    );
    if verify_universal {
        let (_, phi) = double_round_trip(&Arc::new(gpd))?;
        report.check("presentation round trip is an isomorphism", phi.is_levelwise_iso(), "");
    }
    Ok(())
}

/// 2-groupoids of the workspace with small corners in the signature of
/// `like`, for the hom-set comparisons.
fn small_two_groupoids(
    ws: &Workspace,
    like: &DoubleGroupoid,
    bound: usize,
) -> Result<Vec<Arc<DoubleGroupoid>>, CliError> {
    let mut out = Vec::new();
    for g in ws.doubles.values() {
        if g.corner_sizes().iter().any(|&s| s > bound)
            || !g.corner(Corner::C11).same_signature(like.corner(Corner::C11))
        {
            continue;
        }
        if let Some(d) = check_double_groupoid(g)? {
            if is_two_groupoid(&d) {
                out.push(Arc::new(d));
            }
        }
    }
    Ok(out)
}

fn load_double_groupoid(
    ws: &Workspace,
    name: &str,
    report: &mut RunReport,
) -> Result<Option<Arc<DoubleGroupoid>>, CliError> {
    if let Some(rejected) = ws.rejected.get(name) {
        report.check(
            format!("{} validates", rejected.kind),
            false,
            rejected.error.to_string(),
        );
        return Ok(None);
    }
    let dg = ws.double(name)?;
    report.fact("input corners", sizes_text(dg.corner_sizes()));
    match check_double_groupoid(dg)? {
        Some(g) => {
            report.check("input is a double groupoid", true, "");
            Ok(Some(Arc::new(g)))
        }
        None => {
            report.check(
                "input is a double groupoid",
                false,
                "rows or columns admit no groupoid structure",
            );
            Ok(None)
        }
    }
}

fn construction_failed(report: &mut RunReport, e: maltcat_core::Error) -> Result<Outcome, CliError> {
    if crate::workspace::is_mathematical(&e) {
        report.check("construction", false, e.to_string());
        Ok(Outcome {
            report: std::mem::take(report),
            document: None,
        })
    } else {
        Err(e.into())
    }
}

pub fn cmd_reflect(ws: &Workspace, name: &str, verify_universal: bool, write: bool) -> Result<Outcome, CliError> {
    let mut report = RunReport::new(format!("reflect {name}"));
    let Some(dg) = load_double_groupoid(ws, name, &mut report)? else {
        return Ok(Outcome { report, document: None });
    };
    let r = match reflect(&dg) {
        Ok(r) => r,
        Err(e) => return construction_failed(&mut report, e),
    };
    report.fact("reflection corners", sizes_text(r.two_groupoid.graph().corner_sizes()));
    report.check("reflection is a 2-groupoid", is_two_groupoid(&r.two_groupoid), "");
    report.check("unit is surjective at every corner", r.unit.is_regular_epi(), "");
    report.note("unit is bijective", r.unit.is_levelwise_iso(), "");
    if verify_universal {
        for d in small_two_groupoids(ws, &dg, 4)? {
            let b = unit_bijection(&r, &d)?;
            report.check(
                format!("maps into {} factor uniquely through the unit", d.name()),
                b.bijective,
                format!("{} = {}", b.through_universal, b.direct),
            );
        }
    }
    let document = write.then(|| to_json(&DoubleDoc::from_double(r.two_groupoid.graph()).with_unit(&r.unit)));
    Ok(Outcome { report, document })
}

pub fn cmd_coreflect(ws: &Workspace, name: &str, verify_universal: bool, write: bool) -> Result<Outcome, CliError> {
    let mut report = RunReport::new(format!("coreflect {name}"));
    let Some(dg) = load_double_groupoid(ws, name, &mut report)? else {
        return Ok(Outcome { report, document: None });
    };
    let c = match coreflect(&dg) {
        Ok(c) => c,
        Err(e) => return construction_failed(&mut report, e),
    };
    report.fact(
        "coreflection corners",
        sizes_text(c.two_groupoid.graph().corner_sizes()),
    );
    report.check("coreflection is a 2-groupoid", is_two_groupoid(&c.two_groupoid), "");
    report.check("counit is injective at every corner", c.counit.is_levelwise_mono(), "");
    report.note("counit is bijective", c.counit.is_levelwise_iso(), "");
    if verify_universal {
        for x in small_two_groupoids(ws, &dg, 4)? {
            let b = counit_bijection(&c, &x)?;
            report.check(
                format!("maps from {} factor uniquely through the counit", x.name()),
                b.bijective,
                format!("{} = {}", b.through_universal, b.direct),
            );
        }
    }
    let document = write.then(|| to_json(&DoubleDoc::from_double(c.two_groupoid.graph()).with_counit(&c.counit)));
    Ok(Outcome { report, document })
}

pub fn cmd_commutator(
    ws: &Workspace,
    algebra: &str,
    r: &str,
    s: &str,
    verify_universal: bool,
) -> Result<RunReport, CliError> {
    let mut report = RunReport::new(format!("commutator {algebra} {r} {s}"));
    let a = ws.algebra(algebra)?;
    let (rc, sc) = (ws.congruence(&a, r)?, ws.congruence(&a, s)?);
    let c = tc_commutator(&a, &rc, &sc)?;
    report.fact("R", blocks_text(&rc));
    report.fact("S", blocks_text(&sc));
    report.fact("[R,S]", blocks_text(&c));
    report.note("trivial", c.is_identity(), "");
    if verify_universal {
        let cross = commutator_cross_check(&a, &rc, &sc)?;
        report.note("double centralizing", cross.centralizing, "");
        report.check("centralizing implies trivial", cross.consistent(), "");
    }
    Ok(report)
}
