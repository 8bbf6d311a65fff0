//! JSON form: a set is a sorted array of its elements and a family is
//! `{"n": 5, "sets": [[], [1], [2, 3]]}`.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::lattice::{Family, SetWord, MAX_GROUND_SIZE};

impl Serialize for SetWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.elements())
    }
}

impl<'de> Deserialize<'de> for SetWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let elements = Vec::<usize>::deserialize(deserializer)?;
        let mut bits = 0u32;
        for e in elements {
            if !(1..=MAX_GROUND_SIZE).contains(&e) {
                return Err(D::Error::custom(format!(
                    "element {e} outside 1..={MAX_GROUND_SIZE}"
                )));
            }
            if bits >> (e - 1) & 1 == 1 {
                return Err(D::Error::custom(format!("element {e} repeated")));
            }
            bits |= 1 << (e - 1);
        }
        Ok(SetWord(bits))
    }
}

#[derive(Serialize)]
struct FamilyOut<'a> {
    n: usize,
    sets: &'a [SetWord],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyIn {
    n: usize,
    sets: Vec<SetWord>,
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        FamilyOut {
            n: self.n(),
            sets: self.members(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Family {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = FamilyIn::deserialize(deserializer)?;
        Family::new(raw.n, raw.sets).map_err(D::Error::custom)
    }
}
