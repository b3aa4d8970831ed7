catalog_names = [
  "U23", "U13", "U24", "U25", "U35", "U36", "U11", "U01",
  "MK4", "W3", "Q6", "P6", "R6",
  "K", "K*", "F7", "F7-",
  "wheel3", "wheel4", "wheel5", "whirl3", "whirl4", "whirl5",
  "spike4", "spike6", "dspike4", "dspike6",
  "U24+U11", "U24+U01", "MK4x",
]

# spellings accepted by named()
name_aliases = {
  "M(K4)": "MK4",
  "W^3": "W3",
  "F7⁻": "F7-",
  "F7^-": "F7-",
  "K^*": "K*",
  "U24⊕U11": "U24+U11",
  "U24⊕U01": "U24+U01",
  "M4": "spike4",
  "M6": "spike6",
}

excluded_minors_Z = ["Q6", "P6", "U36", "R6", "U24+U11", "U24+U01"]
excluded_minors_R = ["U25", "U35", "K", "K*", "R6", "U24+U11", "U24+U01"]

# edges of K4 in label order a..f; triangles abd, ace, bcf, def
k4_edges = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
