use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::{Elem, Field, GfError};

/// The fixed embedding of a subfield into an extension.
///
/// The generator of the source is sent to the first root of its modulus in
/// the target's element order, so the map is deterministic. Embeddings are
/// cached per `(source, target)` pair.
#[derive(Clone)]
pub struct Embedding {
    source: Field,
    target: Field,
    image: Arc<Vec<Elem>>,
    preimage: Arc<HashMap<Elem, Elem>>,
}

fn cache() -> &'static Mutex<HashMap<(usize, usize), Embedding>> {
    static C: OnceLock<Mutex<HashMap<(usize, usize), Embedding>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Embedding {
    pub fn between(source: &Field, target: &Field) -> Result<Embedding, GfError> {
        if source.characteristic() != target.characteristic()
            || target.degree() % source.degree() != 0
        {
            return Err(GfError::IncompatibleFields(
                source.header(),
                target.header(),
            ));
        }
        let key = (source.id(), target.id());
        if let Some(e) = cache().lock().unwrap().get(&key) {
            return Ok(e.clone());
        }
        let emb = Self::build(source, target);
        cache().lock().unwrap().insert(key, emb.clone());
        Ok(emb)
    }

    fn build(source: &Field, target: &Field) -> Embedding {
        let image: Vec<Elem> = if source == target {
            source.elements().collect()
        } else {
            let m = source.modulus();
            let eval = |x: Elem| -> Elem {
                m.iter().rev().fold(Elem::ZERO, |acc, &c| {
                    target.add(target.mul(acc, x), target.from_int(c as i64))
                })
            };
            let root = target
                .elements()
                .find(|&x| eval(x).is_zero())
                .expect("the modulus splits in every extension of the right degree");
            source
                .elements()
                .map(|e| {
                    source
                        .coeffs(e)
                        .iter()
                        .rev()
                        .fold(Elem::ZERO, |acc, &c| {
                            target.add(target.mul(acc, root), target.from_int(c as i64))
                        })
                })
                .collect()
        };
        let preimage = image
            .iter()
            .enumerate()
            .map(|(i, &t)| (t, Elem(i as u32)))
            .collect();
        Embedding {
            source: source.clone(),
            target: target.clone(),
            image: Arc::new(image),
            preimage: Arc::new(preimage),
        }
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    #[inline]
    pub fn apply(&self, e: Elem) -> Elem {
        self.image[e.0 as usize]
    }

    /// The source element mapping to `e`, if `e` lies in the image.
    pub fn preimage(&self, e: Elem) -> Option<Elem> {
        self.preimage.get(&e).copied()
    }
}
