(>= (r (n) (var y)) 1)
(>= (r (c (var x) (var y)) (var z)) (+ 1 (r (var x) (c (var y) (var z)))))
