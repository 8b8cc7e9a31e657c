{
  "coeff": "Z/4",
  "kind": "cubical2",
  "values": {
    "a b": 1,
    "a c": 2,
    "b c": 3
  }
}
