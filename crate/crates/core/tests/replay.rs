use freearr::arrangement::IndexSet;
use freearr::rootsys::{build_root_system, catalan_certificate, replay_with_source, SeedPolicy};
use freearr::theorems::{replay_certificate, replay_certificate_trusting, SeedVerdict};
use freearr::{Arrangement, Certificate, LatticeData, RootType};
use serde_json::Value;

fn catalan(kind: RootType, n: usize) -> (Certificate, Arrangement) {
    let rs = build_root_system(kind, n).unwrap();
    let c = catalan_certificate(&rs, 1, SeedPolicy::Oracle { bound: None }).unwrap();
    (c.certificate, c.arrangement)
}

/// The arrangement after the substitution `(x, y, z) -> (z, x, y)`.
fn rotate(a: &Arrangement) -> Arrangement {
    let normals: Vec<Vec<i64>> = a
        .iter()
        .map(|h| {
            let n = h.normal();
            let mut m = n[1..].to_vec();
            m.push(n[0]);
            m
        })
        .collect();
    Arrangement::from_normals(a.dim(), &normals).unwrap()
}

/// Every certificate obtained by changing one leaf of the JSON tree.
fn single_field_tamperings(v: &Value) -> Vec<(String, Value)> {
    fn walk(v: &Value, path: String, root: &Value, out: &mut Vec<(String, Value)>) {
        let mut replacements = Vec::new();
        let mut replace = |new: Value| replacements.push(new);
        match v {
            Value::Number(n) => {
                let i = n.as_i64().unwrap();
                replace(Value::from(i + 1));
                if i != 0 {
                    replace(Value::from(i - 1));
                }
            }
            Value::String(s) => {
                let alt = match s.as_str() {
                    "FreeWithExponents" => vec!["Supplied", "Empty"],
                    "MAT2" => vec!["MAT", "MDT", "MAT2Subset", "AdditionDeletion", "MRTCount"],
                    _ => vec!["shi:A2:k=2", "cat:A2:k=1", "weyl:A2", "empty"],
                };
                for a in alt {
                    replace(Value::from(a));
                }
            }
            Value::Array(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    walk(x, format!("{path}/{i}"), root, out);
                }
                if !xs.is_empty() {
                    let mut shorter = xs.clone();
                    shorter.pop();
                    replace(Value::from(shorter));
                }
            }
            Value::Object(m) => {
                for (k, x) in m {
                    walk(x, format!("{path}/{k}"), root, out);
                }
            }
            _ => {}
        }
        for new in replacements {
            let mut t = root.clone();
            *t.pointer_mut(&path).unwrap() = new;
            out.push((path.clone(), t));
        }
    }
    let mut out = Vec::new();
    walk(v, String::new(), v, &mut out);
    out
}

#[test]
fn catalan_a1_replays_on_its_own_lattice() {
    let (cert, a) = catalan(RootType::A, 1);
    let data = LatticeData::from_arrangement(&a);
    assert_eq!(replay_certificate(&data, &cert).unwrap(), vec![1, 3]);
}

#[test]
fn catalan_a2_replays_on_a_rotated_copy() {
    let (cert, a) = catalan(RootType::A, 2);
    let rotated = rotate(&a);
    assert_ne!(rotated, a);
    let data = LatticeData::from_arrangement(&rotated);
    assert_eq!(replay_with_source(&data, &cert, false).unwrap(), vec![1, 4, 5]);
}

#[test]
fn json_round_trip_preserves_replay() {
    let (cert, a) = catalan(RootType::B, 2);
    let back = Certificate::from_json(&cert.to_json()).unwrap();
    assert_eq!(back, cert);
    let data = LatticeData::from_arrangement(&a);
    assert_eq!(replay_certificate(&data, &back).unwrap(), vec![1, 5, 7]);
}

#[test]
fn every_single_field_tampering_is_rejected() {
    let (cert, a) = catalan(RootType::A, 2);
    let data = LatticeData::from_arrangement(&rotate(&a));
    let json: Value = serde_json::from_str(&cert.to_json()).unwrap();
    let cases = single_field_tamperings(&json);
    assert!(cases.len() > 100);
    for (path, t) in cases {
        let Ok(c) = serde_json::from_value::<Certificate>(t) else {
            continue;
        };
        assert!(
            replay_with_source(&data, &c, false).is_err(),
            "tampering at {path} was accepted"
        );
    }
}

#[test]
fn supplied_seed_needs_trust() {
    let (mut cert, a) = catalan(RootType::A, 1);
    cert.seed.verdict = SeedVerdict::Supplied;
    let data = LatticeData::from_arrangement(&a);
    assert!(replay_certificate(&data, &cert).is_err());
    assert_eq!(replay_certificate_trusting(&data, &cert).unwrap(), vec![1, 3]);
}

#[test]
fn missing_flat_is_rejected() {
    let (cert, a) = catalan(RootType::A, 2);
    let full = LatticeData::from_arrangement(&a);
    let mut found_rejection = false;
    for drop in 1..full.flats.len() {
        let mut flats = full.flats.clone();
        flats.remove(drop);
        let data = LatticeData::new(full.dim, full.labels.clone(), flats);
        if replay_certificate(&data, &cert).is_err() {
            found_rejection = true;
        } else {
            panic!("replay accepted a lattice without flat {:?}", full.flats[drop]);
        }
    }
    assert!(found_rejection);
}

#[test]
fn lattice_of_a_different_arrangement_is_rejected() {
    let (cert, a) = catalan(RootType::A, 2);
    let mut normals: Vec<Vec<i64>> = a.iter().map(|h| h.normal().to_vec()).collect();
    normals.pop();
    normals.push(vec![1, 2, 3]);
    let other = Arrangement::from_normals(3, &normals).unwrap();
    assert!(replay_certificate(&LatticeData::from_arrangement(&other), &cert).is_err());
    let empty = LatticeData::new(3, vec![], vec![(IndexSet::new(), 0)]);
    assert!(replay_certificate(&empty, &cert).is_err());
}
