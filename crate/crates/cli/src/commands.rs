use std::fs;
use std::path::Path;

use cotame::classify::{
    decide, good_terms, ideal_i_phi, ideal_j_phi, ngg_membership, ngg_pattern, resolve_ksize, DecideOptions,
    NegativeReason, Route, Verdict, VerdictAnswer,
};
use cotame::endo::json::{endo_from_json, endo_to_json, word_from_json, word_to_json};
use cotame::endo::{BoundPhi, Endo, IdealHandle, InverseHint};
use cotame::poly::{Monomial, Poly};
use cotame::ring::{KSize, Ring};
use cotame::witness::theta::{theta, theta_prime, top_part_holds, TOP_WEIGHTS};
use cotame::witness::{build_witness, verify_witness, DeltaShape, SeedCertificate, SeedRoute};
use serde_json::{json, Value};

use crate::{Cli, Command, CommandResult, MapArgs, SearchArgs, Status};

type Res<T> = std::result::Result<T, String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn read_json(path: &Path) -> Res<Value> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_json(path: &Path, v: &Value) -> Res<()> {
    let text = serde_json::to_string_pretty(v).map_err(err)? + "\n";
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_ring(s: &str) -> Res<Ring> {
    Ring::parse(s).map_err(err)
}

fn load_map(args: &MapArgs) -> Res<Endo> {
    let ring = args.ring.as_deref().map(parse_ring).transpose()?;
    let phi = endo_from_json(&read_json(&args.phi)?, ring.as_ref()).map_err(err)?;
    if let Some(n) = args.n {
        if n != phi.n() {
            return Err(format!("--n {n} does not match the {} images in {}", phi.n(), args.phi.display()));
        }
    }
    Ok(phi)
}

fn load_other(path: &Path, like: &Endo) -> Res<Endo> {
    let psi = endo_from_json(&read_json(path)?, Some(like.ring())).map_err(err)?;
    if psi.n() != like.n() {
        return Err(format!("{} has {} variables, expected {}", path.display(), psi.n(), like.n()));
    }
    Ok(psi)
}

/// Binds phi with a supplied inverse (checked by composition) or a structural one.
fn bind(phi: &Endo, inverse: Option<&Path>) -> Res<BoundPhi> {
    match inverse {
        Some(path) => BoundPhi::new(phi.clone(), load_other(path, phi)?).map_err(err),
        None => BoundPhi::structured(phi.clone()).map_err(err),
    }
}

fn parse_ksize(s: &str) -> Res<KSize> {
    if s.eq_ignore_ascii_case("inf") {
        return Ok(KSize::Infinite);
    }
    s.parse::<u64>().map(KSize::Finite).map_err(|_| format!("--ksize must be an integer or \"inf\", got {s:?}"))
}

fn decide_options(search: &SearchArgs, seed: u64) -> Res<DecideOptions> {
    Ok(DecideOptions {
        k: search.ksize.as_deref().map(parse_ksize).transpose()?,
        budget: search.budget,
        seed,
        ..DecideOptions::default()
    })
}

fn mono(m: &Monomial) -> String {
    m.to_string()
}

fn route_json(route: &Route, ring: &Ring) -> Value {
    match route {
        Route::Negative(NegativeReason::IphiProper(gens)) => json!({
            "kind": route.tag(),
            "generators": gens.iter().map(|g| ring.format(g)).collect::<Vec<_>>(),
        }),
        Route::Negative(NegativeReason::Reduction { modulus, quotient }) => json!({
            "kind": route.tag(),
            "modulus": modulus,
            "quotient": quotient.to_string(),
        }),
        Route::Positive(seed) => seed_route_json(seed, ring),
        _ => json!({ "kind": route.tag() }),
    }
}

fn seed_route_json(route: &SeedRoute, ring: &Ring) -> Value {
    match route {
        SeedRoute::Direct { index } => json!({ "kind": route.tag(), "image": index + 1 }),
        SeedRoute::JFull { coeffs, monomial, good, shifted } => json!({
            "kind": route.tag(),
            "coefficients": coeffs.iter().map(|c| ring.format(c)).collect::<Vec<_>>(),
            "monomial": mono(monomial),
            "type": good.tag(),
            "shifted": shifted,
        }),
        SeedRoute::Delta { index, spec, shape } => json!({
            "kind": route.tag(),
            "image": index + 1,
            "l": spec.l,
            "a": spec.a.iter().map(|c| ring.format(c)).collect::<Vec<_>>(),
            "shape": match shape {
                DeltaShape::Product(a, b) => format!("x{}*x{}", a + 1, b + 1),
                DeltaShape::Square(a) => format!("x{}^2", a + 1),
            },
        }),
    }
}

fn certificate_json(cert: &SeedCertificate) -> Value {
    let dec = &cert.dec;
    json!({
        "case": format!("{:?}", cert.case),
        "seed": cert.seed.poly(&dec.ring, dec.n).to_string(),
        "terms": dec.terms.len(),
        "distinct_maps": dec.distinct_maps(),
        "affine_part": dec.affine.to_string(),
    })
}

fn verdict_result(v: &Verdict, ring: &Ring) -> CommandResult {
    let payload = json!({
        "verdict": v.answer.tag(),
        "route": route_json(&v.route, ring),
        "certificate": v.certificate.as_ref().map(certificate_json),
    });
    CommandResult {
        status: if v.answer == VerdictAnswer::Unknown { Status::UnknownVerdict } else { Status::Ok },
        payload,
        diagnostics: v.diagnostics.clone(),
    }
}

fn maybe_write(output: Option<&Path>, v: Value) -> Res<Value> {
    match output {
        Some(path) => {
            write_json(path, &v)?;
            Ok(json!({ "output": path.display().to_string() }))
        }
        None => Ok(v),
    }
}

/// Splits on commas outside brackets, so extension-field literals stay whole.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out.retain(|x| !x.is_empty());
    out
}

pub fn run(cli: &Cli) -> Res<CommandResult> {
    match &cli.command {
        Command::Parse { ring, n, exprs } => {
            let r = parse_ring(ring)?;
            if exprs.len() == 1 {
                let f = Poly::parse(&exprs[0], &r, *n).map_err(err)?;
                Ok(CommandResult::ok(json!({
                    "ring": r.to_string(),
                    "poly": f.to_string(),
                    "terms": f.nterms(),
                    "degree": f.total_deg().to_string(),
                })))
            } else {
                let strs: Vec<&str> = exprs.iter().map(String::as_str).collect();
                if strs.len() != *n {
                    return Err(format!("{} images given for n = {n}", strs.len()));
                }
                let phi = Endo::parse(&r, &strs).map_err(err)?;
                Ok(CommandResult::ok(endo_to_json(&phi)))
            }
        }
        Command::Compose { map, psi, output } => {
            let phi = load_map(map)?;
            let psi = load_other(psi, &phi)?;
            let out = phi.compose(&psi).map_err(err)?;
            Ok(CommandResult::ok(maybe_write(output.as_deref(), endo_to_json(&out))?))
        }
        Command::Invert { map, output } => {
            let phi = load_map(map)?;
            let inv = phi
                .invert_structured(InverseHint::Affine)
                .or_else(|_| phi.invert_structured(InverseHint::Triangular))
                .map_err(|_| "phi is neither affine nor triangular; its inverse must be supplied".to_string())?;
            Ok(CommandResult::ok(maybe_write(output.as_deref(), endo_to_json(&inv))?))
        }
        Command::Classify { map, search } => classify(&load_map(map)?, search, cli.seed),
        Command::Decide { map, search } => {
            let phi = load_map(map)?;
            let v = decide(&phi, &decide_options(search, cli.seed)?).map_err(err)?;
            Ok(verdict_result(&v, phi.ring()))
        }
        Command::Witness { map, phi_inverse, target, search, max_degree, output } => {
            let phi = load_map(map)?;
            let bound = bind(&phi, phi_inverse.as_deref())?;
            let f = Poly::parse(target, phi.ring(), phi.n()).map_err(err)?;
            let v = decide(&phi, &decide_options(search, cli.seed)?).map_err(err)?;
            let Some(cert) = v.certificate.as_ref() else {
                let mut res = verdict_result(&v, phi.ring());
                if v.answer == VerdictAnswer::NotStablyCotame {
                    res.status = Status::Error;
                    res.diagnostics.push("no witness exists for a map that is not stably co-tame".into());
                }
                return Ok(res);
            };
            let w = build_witness(cert, &f, *max_degree).map_err(err)?;
            let report = verify_witness(&bound, &w.word, &f).map_err(err)?;
            if !report.ok {
                return Err(format!("internal error: compiled word fails at variable {:?}", report.first_mismatch));
            }
            let word = word_to_json(&w.word, phi.ring());
            let mut payload = json!({
                "route": v.route.tag(),
                "target": f.to_string(),
                "word_length": w.word.len(),
                "phi_letters": w.word.phi_count(),
                "seed_word_length": w.seed_word_len,
                "verified": true,
            });
            match output {
                Some(path) => {
                    write_json(path, &word)?;
                    payload["output"] = json!(path.display().to_string());
                }
                None => payload["word"] = word,
            }
            Ok(CommandResult { status: Status::Ok, payload, diagnostics: v.diagnostics })
        }
        Command::Verify { map, phi_inverse, target, word } => {
            let phi = load_map(map)?;
            let bound = bind(&phi, phi_inverse.as_deref())?;
            let f = Poly::parse(target, phi.ring(), phi.n()).map_err(err)?;
            let w = word_from_json(&read_json(word)?, Some(phi.ring())).map_err(err)?;
            if w.ambient != phi.n() + 1 {
                return Err(format!("word acts on {} variables, expected {}", w.ambient, phi.n() + 1));
            }
            let report = verify_witness(&bound, &w, &f).map_err(err)?;
            let mut res = CommandResult::ok(json!({
                "ok": report.ok,
                "first_mismatch": report.first_mismatch,
                "word_length": w.len(),
            }));
            if let Some(i) = report.first_mismatch {
                res.status = Status::Error;
                res.diagnostics.push(format!("first mismatch at variable index {i} (x{})", i + 1));
            }
            Ok(res)
        }
        Command::Theta { n_iter, ring, analyze, output } => {
            let r = parse_ring(ring)?;
            let th = theta(&r, *n_iter).map_err(err)?;
            let mut payload = json!({ "N": n_iter, "terms": th.nterms() });
            if *analyze {
                payload["analysis"] = theta_analysis(&th, *n_iter)?;
            }
            match output {
                Some(path) => {
                    write_json(path, &endo_to_json(&th))?;
                    payload["output"] = json!(path.display().to_string());
                }
                None => payload["theta"] = endo_to_json(&th),
            }
            Ok(CommandResult::ok(payload))
        }
        Command::Reduce { map, ideal, output } => {
            let phi = load_map(map)?;
            let r = phi.ring();
            let gens = split_top_level(ideal)
                .into_iter()
                .map(|g| r.parse_elem(g))
                .collect::<Result<Vec<_>, _>>()
                .map_err(err)?;
            let red = phi.reduce_mod(&IdealHandle::new(r, gens)).map_err(err)?;
            Ok(CommandResult::ok(maybe_write(output.as_deref(), endo_to_json(&red))?))
        }
        Command::NggCheck { map } => {
            let phi = load_map(map)?;
            let p = phi.ring().characteristic();
            let ngg = ngg_membership(&phi).map_err(err)?;
            let mut payload = json!({ "ngg": ngg, "offending": good_monomials_json(&phi)? });
            if p != 0 {
                let pat = ngg_pattern(phi.n(), p).map_err(err)?;
                payload["pattern"] = json!({ "p": pat.p, "d": pat.d, "e": pat.e, "N": pat.exps });
            }
            Ok(CommandResult::ok(payload))
        }
    }
}

fn good_monomials_json(phi: &Endo) -> Res<Value> {
    let r = phi.ring();
    let mut out = Vec::new();
    for (i, g) in phi.images().iter().enumerate() {
        for (m, c, ty) in good_terms(g).map_err(err)? {
            out.push(json!({
                "image": i + 1,
                "monomial": mono(&m),
                "coeff": r.format(&c),
                "type": ty.tag(),
            }));
        }
    }
    Ok(Value::Array(out))
}

fn classify(phi: &Endo, search: &SearchArgs, seed: u64) -> Res<CommandResult> {
    let r = phi.ring();
    let mut diagnostics = Vec::new();
    let opts = decide_options(search, seed)?;
    let mut payload = json!({
        "good_monomials": Value::Null,
        "I_phi": Value::Null,
        "J_phi_certified": Value::Null,
        "ngg": Value::Null,
    });
    match good_monomials_json(phi) {
        Ok(v) => payload["good_monomials"] = v,
        Err(e) => diagnostics.push(format!("good monomials: {e}")),
    }
    match ideal_i_phi(phi) {
        Ok(i) => {
            payload["I_phi"] = json!({
                "generators": i.generators.iter().map(|g| r.format(g)).collect::<Vec<_>>(),
                "full": i.is_full(),
            })
        }
        Err(e) => diagnostics.push(format!("I_phi: {e}")),
    }
    if r.is_field() {
        let k = resolve_ksize(r, opts.k).map_err(err)?;
        let js = ideal_j_phi(phi, k, opts.budget, seed).map_err(err)?;
        payload["J_phi_certified"] = json!(js.certified_full);
        payload["J_phi_search"] = json!({
            "k": k.to_string(),
            "examined": js.examined,
            "budget": js.budget,
            "generators": js.ideal.generators.iter().map(|g| r.format(g)).collect::<Vec<_>>(),
        });
        if !js.certified_full {
            diagnostics.push(format!(
                "J_phi not certified full after examining {} span elements (budget {})",
                js.examined, js.budget
            ));
        }
    } else {
        diagnostics.push(format!("J_phi search needs a field, {r} is not one"));
    }
    match ngg_membership(phi) {
        Ok(b) => payload["ngg"] = json!(b),
        Err(e) => diagnostics.push(format!("ngg: {e}")),
    }
    let v = decide(phi, &opts).map_err(err)?;
    payload["verdict"] = json!(v.answer.tag());
    payload["route"] = route_json(&v.route, r);
    diagnostics.extend(v.diagnostics);
    Ok(CommandResult { status: Status::Ok, payload, diagnostics })
}

fn theta_analysis(th: &Endo, n_iter: u32) -> Res<Value> {
    let r = th.ring();
    let tp = theta_prime(th).map_err(err)?;
    let img = tp.image(1);
    let m = Monomial::from_exps(&[2, 0, 4]);
    let degrees: Vec<String> = (0..3).map(|i| img.deg_var(i).to_string()).collect();
    let top: Vec<Value> = TOP_WEIGHTS
        .iter()
        .map(|w| {
            top_part_holds(&tp, n_iter, w)
                .map(|h| json!({ "weight": w, "holds": h }))
                .map_err(err)
        })
        .collect::<Res<_>>()?;
    // theta_2 composed with itself has images of degree in the thousands
    let involution = if n_iter == 1 { Some(th.compose(th).map_err(err)?.is_identity()) } else { None };
    let ngg = ngg_membership(th).ok();
    let need = 4u64.pow(2 * n_iter - 1) + 2;
    Ok(json!({
        "theta_prime_x2_coeff_x1^2*x3^4": r.format(&img.coeff(&m)),
        "theta_prime_x2_degrees": degrees,
        "top_parts": top,
        "involution": involution,
        "ngg": ngg,
        "base_field_bound": need,
        "field_meets_bound": r.order().is_some_and(|q| q >= need),
    }))
}
