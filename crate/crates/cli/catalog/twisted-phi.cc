{
  "coeff": "Q/Z",
  "kind": "cubical2",
  "values": {
    "a0 b0": "1/2",
    "a0 b1": 0,
    "a1 b0": "1/3",
    "a1 b1": 0
  }
}
