use anyhow::{Context as _, Result};
use strop_core::chain::GradedClass;
use strop_core::geodesic::{loop_homology_table, CrossSpec};
use strop_core::io::parse_complex;
use strop_core::rational::{format_q, parse_q};
use strop_core::torus::{
    chain_intersection, compose_loops, coordinate_subsets, homology_class_torus, is_transverse,
    loop_class_torus, parse_bichain, parse_torus_chain, perturb_translate_detailed, BiChain,
    TorusChain,
};
use strop_core::{
    homology, validate_complex, ClosedManifold, IntersectionRing, OrientationCharacter,
};

use crate::input::{resolve, resolve_file, Kind, Source};
use crate::report::Report;
use crate::{Cli, Context, Verb};

/// The report and whether every check in it passed.
pub(crate) fn execute(cli: &Cli, ctx: &Context) -> Result<(Report, bool)> {
    let catalog = ctx.catalog.as_deref();
    match &cli.verb {
        Verb::Homology { input, twisted } => {
            let src = resolve(input, Kind::Complex, catalog)?;
            Ok((homology_report(cli, &src, *twisted)?, true))
        }
        Verb::Ring { input } => {
            let src = resolve(input, Kind::Complex, catalog)?;
            Ok((ring_report(cli, &src)?, true))
        }
        Verb::TorusIntersect { inputs, radius } => {
            Ok((torus_report(cli, inputs, radius, false)?, true))
        }
        Verb::TorusLoop { inputs, radius } => Ok((torus_report(cli, inputs, radius, true)?, true)),
        Verb::Cross { input, max_degree } => {
            let src = resolve(input, Kind::Cross, catalog)?;
            cross_report(cli, &src, *max_degree)
        }
        Verb::Verify => Ok(crate::verify::suite(cli.seed)),
    }
}

fn command_name(cli: &Cli) -> &'static str {
    match cli.verb {
        Verb::Homology { .. } => "homology",
        Verb::Ring { .. } => "ring",
        Verb::TorusIntersect { .. } => "torus-intersect",
        Verb::TorusLoop { .. } => "torus-loop",
        Verb::Cross { .. } => "cross",
        Verb::Verify => "verify",
    }
}

fn new_report(cli: &Cli, columns: &[&str]) -> Report {
    Report::new(command_name(cli), cli.seed, columns)
}

fn homology_report(cli: &Cli, src: &Source, twisted: bool) -> Result<Report> {
    let loaded = parse_complex(&src.text).with_context(|| src.label.clone())?;
    let k = &loaded.complex;
    let (w, coefficients) = match (twisted, loaded.character) {
        (false, _) => (OrientationCharacter::trivial(k), "Z"),
        (true, Some(w)) => (w, "twisted (signs from file)"),
        (true, None) => (
            OrientationCharacter::from_local_orientations(k)?,
            "twisted (local orientations)",
        ),
    };
    let h = homology(&validate_complex(k, &w)?);
    let mut r = new_report(cli, &["degree", "group"]);
    r.input(&src.label, src.text.as_bytes());
    if let Some(name) = &loaded.name {
        r.fact("name", name);
    }
    r.fact("dimension", k.dim().map_or(-1, |d| d as i64));
    r.fact("coefficients", coefficients);
    for (d, g) in h.degrees.iter().enumerate() {
        r.row([d.to_string(), g.to_string()]);
    }
    Ok(r)
}

fn class_name(x: &GradedClass, i: usize) -> String {
    format!("[{}:{}]", x.degree, i)
}

/// `2[-1:0]-[-1:1]`, or `0`.
fn combination(x: &GradedClass) -> String {
    let mut out = String::new();
    for (i, &c) in x.coords.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let sign = if c < 0 {
            "-"
        } else if out.is_empty() {
            ""
        } else {
            "+"
        };
        let mag = if c.abs() == 1 {
            String::new()
        } else {
            c.abs().to_string()
        };
        out.push_str(&format!("{sign}{mag}{}", class_name(x, i)));
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn ring_report(cli: &Cli, src: &Source) -> Result<Report> {
    let loaded = parse_complex(&src.text).with_context(|| src.label.clone())?;
    let m = match loaded.character {
        Some(w) => ClosedManifold::new(loaded.complex, w)?,
        None => ClosedManifold::from_complex(loaded.complex)?,
    };
    let n = m.dim() as i64;
    let orientable = m.is_orientable();
    let ring = IntersectionRing::new(m)?;
    let mut r = new_report(cli, &["left", "right", "product"]);
    r.input(&src.label, src.text.as_bytes());
    r.fact("dimension", n);
    r.fact("orientable", if orientable { "yes" } else { "no" });
    for d in -n..=0 {
        r.fact(&format!("group[{d}]"), ring.group(d)?);
    }
    for d1 in -n..=0 {
        for d2 in -n..=0 {
            if d1 + d2 < -n {
                continue;
            }
            for (i, x) in ring.basis(d1)?.iter().enumerate() {
                for (j, y) in ring.basis(d2)?.iter().enumerate() {
                    let xy = ring.product(x, y)?;
                    r.row([class_name(x, i), class_name(y, j), combination(&xy)]);
                }
            }
        }
    }
    Ok(r)
}

fn torus_input(inputs: &[String], r: &mut Report) -> Result<BiChain> {
    let sources: Vec<Source> = inputs
        .iter()
        .map(|a| resolve_file(a))
        .collect::<Result<_, _>>()?;
    for s in &sources {
        r.input(&s.label, s.text.as_bytes());
    }
    match sources.as_slice() {
        [one] => Ok(parse_bichain(&one.text).with_context(|| one.label.clone())?),
        [u, v] => {
            let cu: TorusChain = parse_torus_chain(&u.text).with_context(|| u.label.clone())?;
            let cv: TorusChain = parse_torus_chain(&v.text).with_context(|| v.label.clone())?;
            Ok(BiChain::product(&cu, &cv)?)
        }
        _ => unreachable!("clap limits the count"),
    }
}

fn subset_name(subset: &[usize]) -> String {
    if subset.is_empty() {
        "1".into()
    } else {
        subset.iter().map(|i| format!("x{i}")).collect()
    }
}

fn torus_report(cli: &Cli, inputs: &[String], radius: &str, loops: bool) -> Result<Report> {
    let columns: &[&str] = if loops {
        &["winding", "form", "period"]
    } else {
        &["form", "period"]
    };
    let mut r = new_report(cli, columns);
    let radius = parse_q(radius).context("--radius")?;
    let b = torus_input(inputs, &mut r)?;
    let n = b.n();
    r.fact("n", n);
    r.fact("radius", format_q(&radius));
    r.fact("transverse", if is_transverse(&b) { "yes" } else { "no" });
    let moved = perturb_translate_detailed(&b, cli.seed, &radius)?;
    r.fact(
        "shift",
        moved
            .shift
            .iter()
            .map(format_q)
            .collect::<Vec<_>>()
            .join(","),
    );
    r.fact("attempts", moved.attempts);
    let t = chain_intersection(&moved.chain)?;
    r.fact("degree", t.degree);
    r.fact("pieces", t.pieces.len());
    if t.degree < 0 {
        return Ok(r);
    }
    let subsets = coordinate_subsets(n, t.degree as usize);
    if loops {
        for (winding, class) in loop_class_torus(&compose_loops(&t)?)? {
            let w = winding
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",");
            for (s, c) in subsets.iter().zip(class) {
                if c != 0 {
                    r.row([w.clone(), subset_name(s), c.to_string()]);
                }
            }
        }
    } else {
        let class = homology_class_torus(&t.chain()?)?;
        for (s, c) in subsets.iter().zip(class) {
            r.row([subset_name(s), c.to_string()]);
        }
    }
    Ok(r)
}

fn cross_report(cli: &Cli, src: &Source, max_degree: usize) -> Result<(Report, bool)> {
    let spec = CrossSpec::parse(&src.text).with_context(|| src.label.clone())?;
    let table = loop_homology_table(&spec, max_degree)?;
    let mut r = new_report(cli, &["degree", "free_rank", "torsion", "columns"]);
    r.input(&src.label, src.text.as_bytes());
    r.fact("name", &spec.name);
    r.fact("n", spec.n);
    r.fact("alpha1", spec.alpha1);
    r.fact("max_degree", max_degree);
    r.fact("series_matches", table.series.holds);
    r.fact("page_matches", table.matches_page);
    for row in &table.rows {
        let cols = row
            .columns
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",");
        let torsion = if row.group.torsion.is_empty() {
            "-".to_string()
        } else {
            row.group
                .torsion
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        r.row([
            row.degree.to_string(),
            row.group.free_rank.to_string(),
            torsion,
            cols,
        ]);
    }
    Ok((r, table.series.holds && table.matches_page))
}
