use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use hyperwidth::body::EPS_GEO;
use hyperwidth::completeness::{
    constant_width_report, is_complete, prop8_body, radii, regular_simplex_body, reuleaux_triangle,
    scott_completion, ScottOptions,
};
use hyperwidth::widths::{
    maximal_width, minimal_width, width_extended, width_fillmore, width_gh, width_jcjl,
    width_leichtweiss, width_santalo, Method, SearchOptions,
};
use hyperwidth::{
    ball_body, klein_facet_to_hyperplane, load_body, prop8_scene, save_body, write_svg, Body,
    DocumentError, GeomError, HPoint, Hyperplane, IdealPoint, Scene,
};

use crate::{Cli, Command, Extremum, MethodArg, Shape, WidthArgs};

/// Largest resolution accepted for generated balls in `H^3`, which get
/// about `m^2 / pi` vertices.
const MAX_M_3D: usize = 128;

#[derive(Debug)]
pub enum Failure {
    /// Bad or missing arguments; exit code 2.
    Usage(String),
    /// The computation or file handling failed; exit code 1.
    Compute(String),
}

impl From<GeomError> for Failure {
    fn from(e: GeomError) -> Self {
        Failure::Compute(e.to_string())
    }
}

fn doc_err(path: &Path) -> impl Fn(DocumentError) -> Failure + '_ {
    move |e| match e {
        DocumentError::Io { .. } => Failure::Compute(e.to_string()),
        other => Failure::Compute(format!("{}: {other}", path.display())),
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn load(path: &Path) -> Result<Body, Failure> {
    load_body(path).map_err(doc_err(path))
}

fn emit(value: &Value, out: Option<&Path>) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).expect("plain report");
    text.push('\n');
    match out {
        Some(p) => fs::write(p, text)
            .map_err(|e| Failure::Compute(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn run(cli: Cli) -> Result<(), Failure> {
    let seed = cli.seed;
    match cli.command {
        Command::Info {
            body,
            resolution,
            out,
        } => info(&body, resolution, seed, out.as_deref()),
        Command::Width(args) => width(&args, seed),
        Command::Complete {
            body,
            tol,
            out,
            trace,
            max_iter,
            candidates,
        } => {
            let k = load(&body)?;
            let opts = ScottOptions {
                tol,
                max_iter,
                candidates,
                seed,
            };
            let t = scott_completion(&k, &opts)?;
            let mut meta = BTreeMap::new();
            meta.insert("generator".into(), json!("scott_completion"));
            meta.insert("diameter".into(), json!(t.diameter));
            meta.insert("tol".into(), json!(t.tol));
            meta.insert("final_rho".into(), json!(t.final_rho));
            meta.insert("termination".into(), json!(t.termination));
            meta.insert("seed".into(), json!(seed));
            save_body(&out, &t.body, meta).map_err(doc_err(&out))?;
            emit(&t.to_json(), trace.as_deref())
        }
        Command::CheckCw {
            body,
            samples,
            tau,
            res,
        } => {
            let k = load(&body)?;
            let report = constant_width_report(&k, samples, tau, seed)?;
            let cert = is_complete(&k, tau, res.m)?;
            emit(
                &json!({
                    "pass": report.pass && cert.complete,
                    "seed": seed,
                    "m": res.m,
                    "constant_width": report.to_json(),
                    "completeness": cert.to_json(),
                }),
                None,
            )
        }
        Command::Render { scene, out, size } => {
            let s = Scene::load(&scene).map_err(doc_err(&scene))?;
            write_svg(&s, &out, size).map_err(doc_err(&out))
        }
        Command::Gen {
            shape,
            diameter,
            dim,
            center,
            res,
            out,
            scene,
        } => generate(shape, diameter, dim, center, res.m, &out, scene.as_deref()),
    }
}

fn info(path: &Path, resolution: usize, seed: u64, out: Option<&Path>) -> Result<(), Failure> {
    let k = load(path)?;
    let opts = SearchOptions {
        resolution,
        seed,
        ..SearchOptions::default()
    };
    let (i, j, d) = k.diametral_pair();
    let radii = match radii(&k) {
        Ok(r) => r.to_json(),
        Err(e) => json!({ "error": e.to_string() }),
    };
    let mut widths = serde_json::Map::new();
    for m in Method::ALL {
        let entry = if m.planar_only() && k.dim() != 2 {
            json!({ "skipped": "defined in the hyperbolic plane only" })
        } else {
            let one = |r: hyperwidth::Result<hyperwidth::widths::WidthWitness>| match r {
                Ok(w) => w.to_json(),
                Err(e) => json!({ "error": e.to_string() }),
            };
            json!({
                "minimal": one(minimal_width(&k, m, &opts)),
                "maximal": one(maximal_width(&k, m, &opts)),
            })
        };
        widths.insert(m.name().into(), entry);
    }
    let report = json!({
        "dim": k.dim(),
        "vertices": k.vertices().len(),
        "diameter": { "value": d, "pair": [i, j] },
        "radii": radii,
        "widths": widths,
        "provenance": {
            "seed": seed,
            "resolution": resolution,
            "incidence_tolerance": EPS_GEO,
            "diameter": "exact maximum over vertex pairs",
            "circumball_touch_tolerance": 1e-9,
            "inball_touch_tolerance": 1e-7,
            "widths": "grid search refined by local search; maximal values also try diametral chords",
        },
    });
    emit(&report, out)
}

fn plane_arg(args: &WidthArgs) -> Result<Hyperplane, Failure> {
    if let Some(u) = &args.normal {
        return Ok(Hyperplane::new(u, 1e-9)?);
    }
    if let Some(p) = &args.plane {
        let (b, a) = p.split_last().ok_or_else(|| usage("--plane needs coefficients"))?;
        return Ok(klein_facet_to_hyperplane(a, *b)?);
    }
    Err(usage(format!(
        "--method {} needs a hyperplane (--normal or --plane)",
        method_of(args.method)
    )))
}

fn point_arg(args: &WidthArgs) -> Result<HPoint, Failure> {
    let p = args.point.as_ref().ok_or_else(|| {
        usage(format!("--method {} needs --point", method_of(args.method)))
    })?;
    Ok(HPoint::from_klein(p)?)
}

fn ideal_arg(args: &WidthArgs) -> Result<IdealPoint, Failure> {
    let d = args.ideal.as_ref().ok_or_else(|| {
        usage(format!("--method {} needs --ideal", method_of(args.method)))
    })?;
    Ok(IdealPoint::from_direction(d)?)
}

fn method_of(m: MethodArg) -> Method {
    match m {
        MethodArg::Santalo => Method::Santalo,
        MethodArg::Fillmore => Method::Fillmore,
        MethodArg::Leichtweiss => Method::Leichtweiss,
        MethodArg::Extended => Method::Extended,
        MethodArg::Jcjl => Method::Jcjl,
        MethodArg::Gh => Method::Gh,
    }
}

fn width(args: &WidthArgs, seed: u64) -> Result<(), Failure> {
    let k = load(&args.body)?;
    let method = method_of(args.method);
    if let Some(ext) = args.extremal {
        let opts = SearchOptions {
            resolution: args.resolution,
            seed,
            ..SearchOptions::default()
        };
        let w = match ext {
            Extremum::Min => minimal_width(&k, method, &opts)?,
            Extremum::Max => maximal_width(&k, method, &opts)?,
        };
        return emit(&w.to_json(), None);
    }
    match method {
        Method::Santalo => println!("{}", width_santalo(&k, &point_arg(args)?, &plane_arg(args)?)?),
        Method::Fillmore => println!("{}", width_fillmore(&k, &ideal_arg(args)?)?),
        Method::Leichtweiss => {
            println!("{}", width_leichtweiss(&k, &point_arg(args)?, &plane_arg(args)?)?)
        }
        Method::Extended => println!("{}", width_extended(&k, &plane_arg(args)?)?),
        Method::Jcjl => {
            let opts = hyperwidth::widths::JcjlOptions::default();
            for s in width_jcjl(&k, &point_arg(args)?, &plane_arg(args)?, &opts)? {
                println!("{}", s.width);
            }
        }
        Method::Gh => println!("{}", width_gh(&k, &ideal_arg(args)?)?.value),
    }
    Ok(())
}

fn generate(
    shape: Shape,
    d: f64,
    dim: usize,
    center: Option<Vec<f64>>,
    m: usize,
    out: &Path,
    scene: Option<&Path>,
) -> Result<(), Failure> {
    if !(d > 0.0 && d.is_finite()) {
        return Err(usage(format!("--D must be positive, got {d}")));
    }
    if scene.is_some() && shape != Shape::Prop8 {
        return Err(usage("--scene is only produced for --shape prop8"));
    }
    if center.is_some() && shape != Shape::Ball {
        return Err(usage("--center only applies to --shape ball"));
    }
    let planar = |what: &str| {
        if dim == 2 {
            Ok(())
        } else {
            Err(usage(format!("--shape {what} exists in the hyperbolic plane only")))
        }
    };
    let mut meta = BTreeMap::new();
    meta.insert("D".into(), json!(d));
    let body = match shape {
        Shape::Ball => {
            if dim == 3 && m > MAX_M_3D {
                return Err(usage(format!(
                    "--m {m} is too large for a ball in H^3 (about m^2/pi vertices); use at most {MAX_M_3D}"
                )));
            }
            let c = match center {
                Some(c) => HPoint::from_klein(&c)?,
                None => HPoint::apex(dim),
            };
            if c.dim() != dim {
                return Err(usage(format!("--center has {} coordinates, expected {dim}", c.dim())));
            }
            meta.insert("shape".into(), json!("ball"));
            meta.insert("center_klein".into(), json!(c.klein().to_vec()));
            meta.insert("m".into(), json!(m));
            ball_body(&c, d / 2.0, m)?
        }
        Shape::Simplex => {
            meta.insert("shape".into(), json!("simplex"));
            regular_simplex_body(dim, d)?
        }
        Shape::Reuleaux => {
            planar("reuleaux")?;
            meta.insert("shape".into(), json!("reuleaux"));
            meta.insert("m".into(), json!(m));
            reuleaux_triangle(d, m)?
        }
        Shape::Prop8 => {
            planar("prop8")?;
            let p = prop8_body(d / 2.0, m)?;
            meta.insert("shape".into(), json!("prop8"));
            meta.insert("m".into(), json!(m));
            meta.insert("ball_radius".into(), json!(p.radius));
            meta.insert("half_gap".into(), json!(p.half_gap));
            meta.insert(
                "feet_klein".into(),
                json!(p.feet.iter().map(|f| f.klein().to_vec()).collect::<Vec<_>>()),
            );
            if let Some(path) = scene {
                fs::write(path, prop8_scene(&p).to_json_string())
                    .map_err(|e| Failure::Compute(format!("{}: {e}", path.display())))?;
            }
            p.body
        }
    };
    save_body(out, &body, meta).map_err(doc_err(out))
}
