//! Command-line front end.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::a_ring::{compare_with_milnor, gmax_a_ring};
use crate::b_ring::b_frobenius_table;
use crate::error::{Error, Result};
use crate::milnor::MilnorRing;
use crate::potential::{monomial_string, parse_any, InvertiblePotential};
use crate::state_spaces::{a_state_space, b_state_space, mirror_map, poincare_string, StateBasisElement, StateSpace};
use crate::strange_duality::{find_row, load_table, table_version, u12_check, verify_row, RingCheck};
use crate::symmetry::{dual_group, enumerate_gmax, parse_group, DiagonalGroup};
use crate::verify::verify_corpus;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Parser)]
#[command(name = "lg-mirror", version, about = "Landau-Ginzburg mirror symmetry checks with exact arithmetic")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Worker threads for batch commands.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Exponent matrix, charges and atomic decomposition.
    Classify { potential: String },
    /// Charges q solving A q = 1.
    Charges { potential: String },
    /// Maximal diagonal symmetry group.
    Gmax { potential: String },
    /// Dual group G^T on the transpose.
    DualGroup {
        potential: String,
        #[arg(long, default_value = "gmax")]
        group: String,
    },
    /// A-model state space with bidegrees.
    AState {
        potential: String,
        #[arg(long, default_value = "J")]
        group: String,
    },
    /// B-model state space with bidegrees.
    BState {
        potential: String,
        #[arg(long, default_value = "SL")]
        group: String,
    },
    /// Mirror map B(W^T, G^T) -> A(W, G).
    MirrorCheck {
        potential: String,
        #[arg(long, default_value = "J")]
        group: String,
    },
    /// Orbifold B-model Frobenius algebra.
    BRing {
        potential: String,
        #[arg(long, default_value = "SL")]
        group: String,
    },
    /// A-model ring for the maximal group, compared with the transpose Milnor ring.
    ARingGmax { potential: String },
    /// Check the exceptional unimodal singularities under strange duality.
    StrangeDuality {
        #[arg(long)]
        row: Option<String>,
    },
    /// Verify every module invariant on the corpus.
    Verify {
        #[arg(long, default_value_t = 3)]
        max_vars: usize,
        #[arg(long, default_value_t = 4)]
        max_exponent: u32,
        /// Skip the maximal-group A-ring comparison.
        #[arg(long)]
        no_a_ring: bool,
    },
}

struct Rendered {
    json: Value,
    /// Header first.
    rows: Vec<Vec<String>>,
    pretty: String,
    code: i32,
}

fn group_json(g: &DiagonalGroup) -> Value {
    json!({
        "order": g.order(),
        "generators": g.generators(),
        "elements": g.elements(),
    })
}

fn element_json(p: &InvertiblePotential, e: &StateBasisElement) -> Value {
    json!({
        "sector": e.sector,
        "monomial": e.monomial,
        "label": e.label(p.vars()),
    })
}

fn space_render(s: &StateSpace) -> Rendered {
    let p = &s.potential;
    let elements: Vec<Value> = s
        .elements
        .iter()
        .zip(&s.degrees)
        .map(|(e, d)| {
            let mut v = element_json(p, e);
            v["degree"] = serde_json::to_value(d).unwrap();
            v
        })
        .collect();
    let mut rows = vec![vec!["sector", "monomial", "plus", "minus", "sum", "diff"].into_iter().map(String::from).collect()];
    let mut pretty = format!("{:?}-model of {} with |G| = {}: dim {}\n", s.model, p, s.group.order(), s.len());
    for (e, d) in s.elements.iter().zip(&s.degrees) {
        let (sum, diff) = crate::state_spaces::sum_diff(d);
        rows.push(vec![
            e.sector.to_string(),
            monomial_string(p.vars(), &e.monomial),
            d.plus.to_string(),
            d.minus.to_string(),
            sum.to_string(),
            diff.to_string(),
        ]);
        pretty.push_str(&format!("  {:<28} {}  sum {} diff {}\n", e.label(p.vars()), d, sum, diff));
    }
    let poincare = poincare_string(&s.poincare());
    pretty.push_str(&format!("Poincare: {poincare}\n"));
    Rendered {
        json: json!({
            "model": s.model,
            "potential": p.to_string(),
            "group": group_json(&s.group),
            "dim": s.len(),
            "elements": elements,
            "poincare": poincare,
        }),
        rows,
        pretty,
        code: 0,
    }
}

fn classify(p: &InvertiblePotential) -> Rendered {
    let r = p.report();
    let blocks: Vec<Value> = r
        .blocks
        .iter()
        .map(|b| {
            json!({
                "kind": b.kind,
                "vars": b.vars.iter().map(|&j| p.vars()[j].clone()).collect::<Vec<_>>(),
                "exponents": b.exponents,
            })
        })
        .collect();
    let mut rows = vec![vec!["kind".to_string(), "vars".into(), "exponents".into()]];
    let mut names = Vec::new();
    for b in &r.blocks {
        let vs: Vec<String> = b.vars.iter().map(|&j| p.vars()[j].clone()).collect();
        let es: Vec<String> = b.exponents.iter().map(|e| e.to_string()).collect();
        names.push(format!("{:?}({};{})", b.kind, vs.join(","), es.join(",")).to_lowercase());
        rows.push(vec![format!("{:?}", b.kind).to_lowercase(), vs.join(" "), es.join(" ")]);
    }
    let charges: Vec<String> = p.vars().iter().zip(&r.charges).map(|(v, q)| format!("q_{v} = {q}")).collect();
    Rendered {
        json: json!({
            "potential": p.to_string(),
            "vars": p.vars(),
            "exponents": p.exponents(),
            "det": r.det,
            "charges": crate::io::rats_json(&r.charges),
            "central_charge": r.central_charge.to_string(),
            "milnor_number": r.milnor_number,
            "blocks": blocks,
        }),
        rows,
        pretty: format!(
            "{}\n  det {}, {}, c-hat {}, mu {}\n  blocks [{}]\n",
            p,
            r.det,
            charges.join(", "),
            r.central_charge,
            r.milnor_number,
            names.join(", ")
        ),
        code: 0,
    }
}

fn charges(p: &InvertiblePotential) -> Rendered {
    let mut rows = vec![vec!["var".to_string(), "charge".into()]];
    let mut pretty = String::new();
    for (v, q) in p.vars().iter().zip(p.charges()) {
        rows.push(vec![v.clone(), q.to_string()]);
        pretty.push_str(&format!("q_{v} = {q}\n"));
    }
    Rendered {
        json: json!({ "vars": p.vars(), "charges": crate::io::rats_json(p.charges()) }),
        rows,
        pretty,
        code: 0,
    }
}

fn group_render(g: &DiagonalGroup, title: &str, extra: Value) -> Rendered {
    let mut rows = vec![vec!["element".to_string()]];
    rows.extend(g.elements().iter().map(|e| vec![e.to_string()]));
    let mut json = group_json(g);
    if let (Value::Object(m), Value::Object(x)) = (&mut json, extra) {
        m.extend(x);
    }
    let els: Vec<String> = g.elements().iter().map(|e| e.to_string()).collect();
    Rendered {
        json,
        rows,
        pretty: format!("{title}: order {}\n  {}\n", g.order(), els.join("\n  ")),
        code: 0,
    }
}

fn mirror_check(p: &InvertiblePotential, g: &DiagonalGroup) -> Result<Rendered> {
    let r = mirror_map(p, g)?;
    let t = p.transpose();
    let mut rows = vec![["b_sector", "b_monomial", "a_sector", "a_monomial", "sum", "diff"].map(String::from).to_vec()];
    let mut pretty = format!(
        "B({}) -> A({}): {} B elements, {} A elements, bijective {}, degrees equal {}\n",
        t,
        p,
        r.b_count,
        r.a_count,
        r.bijective,
        r.degrees_equal
    );
    let pairs: Vec<Value> = r
        .pairs
        .iter()
        .map(|x| {
            let (sum, diff) = crate::state_spaces::sum_diff(&x.a_degree);
            rows.push(vec![
                x.b.sector.to_string(),
                monomial_string(t.vars(), &x.b.monomial),
                x.a.sector.to_string(),
                monomial_string(p.vars(), &x.a.monomial),
                sum.to_string(),
                diff.to_string(),
            ]);
            pretty.push_str(&format!("  {:<26} -> {:<26} {}\n", x.b.label(t.vars()), x.a.label(p.vars()), x.a_degree));
            json!({
                "b": element_json(&t, &x.b),
                "a": element_json(p, &x.a),
                "b_degree": x.b_degree,
                "a_degree": x.a_degree,
            })
        })
        .collect();
    Ok(Rendered {
        json: json!({
            "potential": p.to_string(),
            "transpose": t.to_string(),
            "group": group_json(g),
            "dual_group": group_json(&dual_group(p, g)),
            "a_count": r.a_count,
            "b_count": r.b_count,
            "bijective": r.bijective,
            "degrees_equal": r.degrees_equal,
            "pairs": pairs,
        }),
        rows,
        pretty,
        code: if r.ok() { 0 } else { 3 },
    })
}

fn b_ring(p: &InvertiblePotential, g: &DiagonalGroup) -> Result<Rendered> {
    let t = b_frobenius_table(p, g)?;
    let axioms = t.verify();
    let relations = t.relations();
    let mut rows = vec![vec!["i".to_string(), "j".into(), "k".into(), "coefficient".into()]];
    for i in 0..t.dim() {
        for j in 0..t.dim() {
            for (k, c) in &t.products[i][j] {
                rows.push(vec![t.labels[i].clone(), t.labels[j].clone(), t.labels[*k].clone(), c.to_string()]);
            }
        }
    }
    let verdict = match &axioms {
        Ok(()) => "ok".to_string(),
        Err(e) => e.to_string(),
    };
    Ok(Rendered {
        json: json!({
            "potential": p.to_string(),
            "group": group_json(g),
            "dim": t.dim(),
            "table": t,
            "commutative": t.check_commutative(),
            "axioms": verdict,
            "relations": relations,
        }),
        rows,
        pretty: format!("B-ring of {} (dim {}), axioms: {}\n  {}\n", p, t.dim(), verdict, relations.join("\n  ")),
        code: if axioms.is_ok() { 0 } else { 3 },
    })
}

fn a_ring(p: &InvertiblePotential) -> Result<Rendered> {
    let pres = gmax_a_ring(p)?;
    let rt = MilnorRing::cached(&p.transpose())?;
    let report = compare_with_milnor(&pres, &rt);
    let mut rows = vec![["insertions", "line_degrees", "axiom", "value"].map(String::from).to_vec()];
    let mut pretty = format!(
        "A-ring of {} with G^max vs Q({}): dim {}, structure constants equal {}, pairing scale {}\n",
        p,
        pres.transpose,
        pres.dim,
        report.structure_constants_equal,
        report.pairing_scale.as_ref().map_or("none".into(), |s| s.to_string())
    );
    pretty.push_str("relations:\n");
    for r in &pres.relations {
        pretty.push_str(&format!("  {}  [{}]\n", r.relation, match r.verified_directly {
            Some(true) => "checked",
            Some(false) => "FAILED",
            None => "via structure constants",
        }));
    }
    pretty.push_str("correlators:\n");
    for c in &pres.audit {
        let ins: Vec<String> = c.insertions.iter().map(|g| g.to_string()).collect();
        let ls: Vec<String> = c.line_degrees.iter().map(|l| l.to_string()).collect();
        rows.push(vec![ins.join(" "), ls.join(" "), format!("{:?}", c.axiom), c.value.to_string()]);
        pretty.push_str(&format!("  <{}> l = ({}) {:?} = {}\n", ins.join(", "), ls.join(","), c.axiom, c.value));
    }
    Ok(Rendered {
        json: json!({ "presentation": pres, "comparison": report, "ok": report.ok() }),
        rows,
        pretty,
        code: if report.ok() { 0 } else { 3 },
    })
}

fn strange_duality(row: Option<&str>) -> Result<Rendered> {
    let records = match row {
        Some(name) => vec![find_row(name).ok_or_else(|| Error::Input(format!("unknown class '{name}'")))?],
        None => load_table(),
    };
    let reports: Vec<_> = {
        use rayon::prelude::*;
        records.par_iter().map(verify_row).collect::<Result<Vec<_>>>()?
    };
    let u12 = if row.is_none() || row.is_some_and(|r| r.eq_ignore_ascii_case("U12")) {
        Some(u12_check()?)
    } else {
        None
    };
    let ok = reports.iter().all(|r| r.ok()) && u12.as_ref().is_none_or(|u| u.ok());
    let mut rows = vec![[
        "class", "representative", "charges", "mu", "gmax_is_j", "dual", "poincare", "ring",
    ]
    .map(String::from)
    .to_vec()];
    let mut pretty = format!("{:<5} {:<20} {:>7} {:>4} {:>9} {:>5} {:>8}  ring\n", "class", "W'", "charges", "mu", "<J>=Gmax", "dual", "poincare");
    let b = |x: bool| if x { "ok" } else { "FAIL" };
    for r in &reports {
        let ring = match &r.ring {
            RingCheck::Passed => "ok".to_string(),
            RingCheck::Failed(m) => format!("FAIL {m}"),
            RingCheck::Excluded(m) => format!("excluded: {m}"),
        };
        rows.push(vec![
            r.class.clone(),
            r.representative.clone(),
            b(r.charges_equal).into(),
            b(r.mu_equal).into(),
            b(r.gmax_is_j).into(),
            b(r.dual_match).into(),
            b(r.poincare_equal).into(),
            ring.clone(),
        ]);
        pretty.push_str(&format!(
            "{:<5} {:<20} {:>7} {:>4} {:>9} {:>5} {:>8}  {}\n",
            r.class,
            r.representative,
            b(r.charges_equal),
            b(r.mu_equal),
            b(r.gmax_is_j),
            b(r.dual_match),
            b(r.poincare_equal),
            ring
        ));
    }
    if let Some(u) = &u12 {
        pretty.push_str(&format!(
            "U12 orbifold B-model: dim {}, X^2=0 {}, Y^2=0 {}, Z^3=0 {}, XY!=0 {}, iso {}\n",
            u.dim, u.x_squared_zero, u.y_squared_zero, u.z_cubed_zero, u.xy_nonzero, u.isomorphic
        ));
    }
    Ok(Rendered {
        json: json!({ "version": table_version(), "rows": reports, "u12": u12, "ok": ok }),
        rows,
        pretty,
        code: if ok { 0 } else { 3 },
    })
}

fn verify(max_vars: usize, max_exponent: u32, with_a_ring: bool) -> Rendered {
    let r = verify_corpus(max_vars, max_exponent, with_a_ring);
    let mut rows = vec![["potential", "group", "check", "status", "detail"].map(String::from).to_vec()];
    let mut pretty = format!(
        "corpus max_vars {} max_exponent {}: {} potentials, {} pairs, {} failing reports\n",
        max_vars, max_exponent, r.potentials, r.pairs, r.failures
    );
    for rep in &r.reports {
        for c in &rep.checks {
            rows.push(vec![
                rep.subject.potential.clone(),
                rep.subject.group.clone().unwrap_or_default(),
                c.name.clone(),
                serde_json::to_value(&c.status).unwrap().as_str().unwrap().to_string(),
                c.detail.clone().unwrap_or_default(),
            ]);
        }
        if !rep.ok() {
            pretty.push_str(&format!("FAIL {} {:?}\n", rep.subject.potential, rep.subject.group));
        }
    }
    Rendered { json: serde_json::to_value(&r).unwrap(), rows, pretty, code: if r.ok() { 0 } else { 3 } }
}

fn potential(s: &str) -> Result<InvertiblePotential> {
    parse_any(s)
}

fn dispatch(cmd: &Cmd) -> Result<Rendered> {
    match cmd {
        Cmd::Classify { potential: s } => Ok(classify(&potential(s)?)),
        Cmd::Charges { potential: s } => Ok(charges(&potential(s)?)),
        Cmd::Gmax { potential: s } => {
            let p = potential(s)?;
            Ok(group_render(&enumerate_gmax(&p), "G^max", json!({ "det": p.det() })))
        }
        Cmd::DualGroup { potential: s, group } => {
            let p = potential(s)?;
            let g = parse_group(&p, group)?;
            let d = dual_group(&p, &g);
            let extra = json!({ "group": group_json(&g), "det": p.det(), "transpose": p.transpose().to_string() });
            Ok(group_render(&d, "G^T", extra))
        }
        Cmd::AState { potential: s, group } => {
            let p = potential(s)?;
            Ok(space_render(&a_state_space(&p, &parse_group(&p, group)?)?))
        }
        Cmd::BState { potential: s, group } => {
            let p = potential(s)?;
            Ok(space_render(&b_state_space(&p, &parse_group(&p, group)?)?))
        }
        Cmd::MirrorCheck { potential: s, group } => {
            let p = potential(s)?;
            mirror_check(&p, &parse_group(&p, group)?)
        }
        Cmd::BRing { potential: s, group } => {
            let p = potential(s)?;
            b_ring(&p, &parse_group(&p, group)?)
        }
        Cmd::ARingGmax { potential: s } => a_ring(&potential(s)?),
        Cmd::StrangeDuality { row } => strange_duality(row.as_deref()),
        Cmd::Verify { max_vars, max_exponent, no_a_ring } => Ok(verify(*max_vars, *max_exponent, !no_a_ring)),
    }
}

fn render(r: &Rendered, format: Format) -> std::result::Result<Vec<u8>, String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&r.json).map_err(|e| e.to_string())?;
            s.push('\n');
            Ok(s.into_bytes())
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in &r.rows {
                w.write_record(row).map_err(|e| e.to_string())?;
            }
            w.into_inner().map_err(|e| e.to_string())
        }
        Format::Pretty => Ok(r.pretty.clone().into_bytes()),
    }
}

/// Parse `argv` (program name first), run, and return the exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let result = match cli.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli.cmd)),
            Err(e) => Err(Error::Input(e.to_string())),
        },
        None => dispatch(&cli.cmd),
    };
    let rendered = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let bytes = match render(&rendered, cli.format) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &bytes),
        None => std::io::stdout().write_all(&bytes),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 1;
    }
    rendered.code
}
