{
  "coeff": "Z/4",
  "kind": "cat-coboundary",
  "values": {
    "e": 1,
    "f": 3
  }
}
