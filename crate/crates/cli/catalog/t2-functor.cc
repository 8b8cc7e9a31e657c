{
  "coeff": "Z",
  "kind": "functor1",
  "values": {
    "e": 1,
    "f": -2
  }
}
