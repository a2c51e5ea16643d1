//! The bundled example documents, compiled into the binary.

pub const FIXTURES: [(&str, &str); 7] = [
    ("ex3_9", include_str!("../../fixtures/ex3_9.json")),
    ("ex4_13", include_str!("../../fixtures/ex4_13.json")),
    ("ex5_1", include_str!("../../fixtures/ex5_1.json")),
    ("ex5_10", include_str!("../../fixtures/ex5_10.json")),
    ("ex5_11", include_str!("../../fixtures/ex5_11.json")),
    ("ex5_15", include_str!("../../fixtures/ex5_15.json")),
    ("delta_kx2", include_str!("../../fixtures/delta_kx2.json")),
];

pub fn get(name: &str) -> Option<&'static str> {
    let name = name.strip_suffix(".json").unwrap_or(name);
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}
