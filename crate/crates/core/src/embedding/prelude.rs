use std::sync::OnceLock;

use crate::dk::{parse_document, Item};

/// Encoding of many-sorted, rank-1 polymorphic first-order logic.
pub const PRELUDE: &str = "\
Set : Type.
El : Set -> Type.
iota : Set.
Prop : Type.
def prf : Prop -> Type.
bot : Prop.
imp : Prop -> Prop -> Prop.
[a, b] prf (imp a b)
  --> prf a -> prf b.
def not : Prop -> Prop :=
  a : Prop => imp a bot.
forall : a : Set -> (El a -> Prop) -> Prop.
[a, p] prf (forall a p)
  --> x : El a -> prf (p x).
forallSet : (Set -> Prop) -> Prop.
[p] prf (forallSet p)
  --> a : Set -> prf (p a).
forallPred : a : Set -> ((El a -> Prop) -> Prop) -> Prop.
[a, f] prf (forallPred a f)
  --> p : (El a -> Prop) -> prf (f p).
def eq : a : Set -> El a -> El a -> Prop :=
  a : Set => x : El a => y : El a => forallPred a (p : (El a -> Prop) => imp (p x) (p y)).
star : A : Set -> El A.
";

/// Equality lemmas used by the translations.
pub const SHORTHANDS: &str = "\
def refl : a : Set -> x : El a -> prf (eq a x x) :=
  a : Set => x : El a => p : (El a -> Prop) => h : prf (p x) => h.
def sym : a : Set -> x : El a -> y : El a -> prf (eq a x y) -> prf (eq a y x) :=
  a : Set => x : El a => y : El a => e : prf (eq a x y) => e (z : El a => eq a z x) (refl a x).
def comml : a : Set -> x : El a -> y : El a -> (prf (eq a x y) -> prf bot) -> prf (eq a y x) -> prf bot :=
  a : Set => x : El a => y : El a => h : (prf (eq a x y) -> prf bot) => e : prf (eq a y x) => h (sym a y x e).
def comml_not : a : Set -> x : El a -> y : El a -> (prf (not (eq a x y)) -> prf bot) -> prf (not (eq a y x)) -> prf bot :=
  a : Set => x : El a => y : El a => h : (prf (not (eq a x y)) -> prf bot) => e : prf (not (eq a y x)) => h (d : prf (eq a x y) => e (sym a x y d)).
";

fn items(src: &str) -> Vec<Item> {
    parse_document(src).expect("built-in script parses").items().cloned().collect()
}

/// The encoding entries, in order.
pub fn prelude_items() -> &'static [Item] {
    static CELL: OnceLock<Vec<Item>> = OnceLock::new();
    CELL.get_or_init(|| items(PRELUDE))
}

/// The shorthand lemmas, in order.
pub fn shorthand_items() -> &'static [Item] {
    static CELL: OnceLock<Vec<Item>> = OnceLock::new();
    CELL.get_or_init(|| items(SHORTHANDS))
}

/// Identifiers defined by the prelude and shorthands.
pub fn reserved_names() -> impl Iterator<Item = &'static str> {
    prelude_items().iter().chain(shorthand_items()).filter_map(|i| match i {
        Item::Decl { name, .. } | Item::Def { name, .. } => Some(name.as_str()),
        _ => None,
    })
}
