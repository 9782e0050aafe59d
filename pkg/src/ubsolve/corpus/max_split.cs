; max elimination cannot split this into absolutely positive parts
(>= (max (* 2 (var x)) (* 2 (var y))) (+ (var x) (var y)))
