//! JSON table format.
//!
//! ```json
//! {"name": "z2", "m": 2, "n": 2, "carrier": ["0", "1"], "zero": "0", "one": "1",
//!  "f": {"0,0": ["0"], "0,1": ["1"], "1,1": ["0"]},
//!  "g": {"0,0": "0", "0,1": "0", "1,1": "1"}}
//! ```
//!
//! Keys are element names joined by `,`. Any argument order is accepted on
//! input; two orders of one multiset must agree. Output keys list arguments
//! in carrier order.

use std::collections::BTreeMap;
use std::ops::ControlFlow;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::element::{Element, ElementSet};
use crate::error::{Error, Result};
use crate::multiset::{for_each_multiset, MultisetIndex, MAX_ARITY};
use crate::structure::HyperStructure;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureDocument {
    pub name: String,
    pub m: usize,
    pub n: usize,
    pub carrier: Vec<String>,
    pub zero: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub one: Option<String>,
    pub f: BTreeMap<String, Vec<String>>,
    pub g: BTreeMap<String, String>,
}

pub fn load(path: impl AsRef<Path>) -> Result<HyperStructure> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Document(format!("{}: {e}", path.display())))?;
    from_json(&text)
}

pub fn from_json(text: &str) -> Result<HyperStructure> {
    let doc: StructureDocument = serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
    doc.into_structure()
}

pub fn to_json(a: &HyperStructure) -> String {
    let mut s = serde_json::to_string_pretty(&StructureDocument::from_structure(a)).expect("document serializes");
    s.push('\n');
    s
}

impl StructureDocument {
    pub fn from_structure(a: &HyperStructure) -> Self {
        let carrier = a.element_vec();
        let key = |t: &[Element]| t.iter().map(|x| a.element_name(*x)).collect::<Vec<_>>().join(",");
        let mut f = BTreeMap::new();
        let _ = for_each_multiset(&carrier, a.m(), |t| {
            f.insert(key(t), a.set_names(a.f(t)));
            ControlFlow::Continue(())
        });
        let mut g = BTreeMap::new();
        let _ = for_each_multiset(&carrier, a.n(), |t| {
            g.insert(key(t), a.element_name(a.g(t)).to_string());
            ControlFlow::Continue(())
        });
        StructureDocument {
            name: a.name().to_string(),
            m: a.m(),
            n: a.n(),
            carrier: a.names().to_vec(),
            zero: a.element_name(a.zero()).to_string(),
            one: a.one().map(|o| a.element_name(o).to_string()),
            f,
            g,
        }
    }

    pub fn into_structure(self) -> Result<HyperStructure> {
        let size = self.carrier.len();
        if !(2..=MAX_ARITY).contains(&self.m) || !(2..=MAX_ARITY).contains(&self.n) {
            return Err(Error::Document(format!("arities must lie in 2..={MAX_ARITY}")));
        }
        if size == 0 || size > crate::MAX_CARRIER {
            return Err(Error::Document(format!("carrier size {size} unsupported")));
        }
        let lookup = |name: &str| -> Result<Element> {
            self.carrier
                .iter()
                .position(|c| c == name)
                .map(Element::new)
                .ok_or_else(|| Error::UnknownElement(name.to_string()))
        };
        let parse_key = |key: &str, arity: usize| -> Result<Vec<Element>> {
            let args = key.split(',').map(|p| lookup(p.trim())).collect::<Result<Vec<_>>>()?;
            if args.len() != arity {
                return Err(Error::Document(format!("key `{key}` has {} arguments, expected {arity}", args.len())));
            }
            Ok(args)
        };
        let f_index = MultisetIndex::new(size, self.m);
        let mut f_table: Vec<Option<ElementSet>> = vec![None; f_index.len()];
        for (key, names) in &self.f {
            let r = f_index.rank(&parse_key(key, self.m)?);
            let value = names.iter().map(|v| lookup(v)).collect::<Result<ElementSet>>()?;
            if value.is_empty() {
                return Err(Error::Document(format!("empty f value at `{key}`")));
            }
            match f_table[r] {
                Some(prev) if prev != value => {
                    return Err(Error::Document(format!("conflicting f entries for the multiset of `{key}`")))
                }
                _ => f_table[r] = Some(value),
            }
        }
        let g_index = MultisetIndex::new(size, self.n);
        let mut g_table: Vec<Option<Element>> = vec![None; g_index.len()];
        for (key, name) in &self.g {
            let r = g_index.rank(&parse_key(key, self.n)?);
            let value = lookup(name)?;
            match g_table[r] {
                Some(prev) if prev != value => {
                    return Err(Error::Document(format!("conflicting g entries for the multiset of `{key}`")))
                }
                _ => g_table[r] = Some(value),
            }
        }
        let names = &self.carrier;
        let missing = |index: &MultisetIndex, filled: &dyn Fn(usize) -> bool, op: &str| -> Result<()> {
            let carrier: Vec<Element> = (0..size).map(Element::new).collect();
            let mut gap = None;
            let _ = for_each_multiset(&carrier, index.arity(), |t| {
                if !filled(index.rank_sorted(t)) {
                    gap = Some(t.iter().map(|x| names[x.index()].as_str()).collect::<Vec<_>>().join(","));
                    return ControlFlow::Break(());
                }
                ControlFlow::Continue(())
            });
            match gap {
                Some(k) => Err(Error::Document(format!("missing {op} key `{k}`"))),
                None => Ok(()),
            }
        };
        missing(&f_index, &|r| f_table[r].is_some(), "f")?;
        missing(&g_index, &|r| g_table[r].is_some(), "g")?;
        let zero = lookup(&self.zero)?;
        let one = self.one.as_deref().map(lookup).transpose()?;
        HyperStructure::from_tables(
            self.name.clone(),
            self.m,
            self.n,
            self.carrier.clone(),
            zero,
            one,
            f_table.into_iter().map(|v| v.expect("checked total")).collect(),
            g_table.into_iter().map(|v| v.expect("checked total")).collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{fixture, ring_zk};
    use proptest::prelude::*;

    const Z2: &str = r#"{"name": "z2", "m": 2, "n": 2, "carrier": ["0", "1"], "zero": "0", "one": "1",
        "f": {"0,0": ["0"], "1,0": ["1"], "1,1": ["0"]},
        "g": {"0,0": "0", "0,1": "0", "1,1": "1"}}"#;

    #[test]
    fn loads_small_ring() {
        let a = from_json(Z2).unwrap();
        assert_eq!(a, ring_zk(2).with_name("z2"));
    }

    #[test]
    fn round_trips_fixtures() {
        for name in ["paper-2-4", "paper-3-3", "ring:Z6", "ring:Z2*ring:Z3"] {
            let a = fixture(name).unwrap().structure;
            assert_eq!(from_json(&to_json(&a)).unwrap(), a, "{name}");
        }
    }

    #[test]
    fn rejects_conflicting_permutations() {
        let a = fixture("paper-2-4").unwrap().structure;
        let mut doc = StructureDocument::from_structure(&a);
        doc.f.insert("3,1".into(), vec!["2".into()]);
        let err = doc.into_structure().unwrap_err();
        assert!(err.to_string().contains("conflicting"), "{err}");
        let mut doc = StructureDocument::from_structure(&a);
        doc.f.insert("3,1".into(), vec!["3".into(), "2".into()]);
        assert_eq!(doc.into_structure().unwrap(), a);
    }

    #[test]
    fn rejects_missing_and_bad_entries() {
        let a = fixture("paper-2-4").unwrap().structure;
        let mut doc = StructureDocument::from_structure(&a);
        doc.g.remove("0,0,0,0");
        assert!(doc.into_structure().unwrap_err().to_string().contains("missing g key `0,0,0,0`"));

        let mut doc = StructureDocument::from_structure(&a);
        doc.f.insert("1,1".into(), vec![]);
        assert!(doc.into_structure().unwrap_err().to_string().contains("empty f value"));

        let mut doc = StructureDocument::from_structure(&a);
        doc.g.insert("1,1,1,7".into(), "0".into());
        assert_eq!(doc.into_structure(), Err(Error::UnknownElement("7".into())));

        let mut doc = StructureDocument::from_structure(&a);
        doc.f.insert("1,1,1".into(), vec!["0".into()]);
        assert!(matches!(doc.into_structure(), Err(Error::Document(_))));

        assert!(matches!(from_json("{not json"), Err(Error::Document(_))));
    }

    fn arbitrary_structure() -> impl Strategy<Value = HyperStructure> {
        (1usize..5, 2usize..4, 2usize..4, any::<u64>(), any::<bool>()).prop_map(|(size, m, n, seed, with_one)| {
            let step = |state: &mut u64| {
                *state ^= *state << 13;
                *state ^= *state >> 7;
                *state ^= *state << 17;
                *state
            };
            let (mut fs, mut gs) = (seed | 1, seed.rotate_left(32) | 1);
            let full = (1u64 << size) - 1;
            let names = (0..size).map(|i| format!("e{i}")).collect();
            HyperStructure::from_fn(
                "random",
                m,
                n,
                names,
                Element::new(0),
                with_one.then(|| Element::new(size - 1)),
                |_| {
                    let bits = step(&mut fs) & full;
                    ElementSet::from_bits(if bits == 0 { 1 } else { bits })
                },
                |_| Element::new((step(&mut gs) % size as u64) as usize),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn round_trip(a in arbitrary_structure()) {
            let text = to_json(&a);
            prop_assert_eq!(from_json(&text).unwrap(), a.clone());
            prop_assert_eq!(to_json(&from_json(&text).unwrap()), text);
        }
    }
}
