{
  "coeff": "Z/2",
  "kind": "cubical2",
  "values": {
    "e f": 0
  }
}
