(>= (k) 5)
(>= (m) (+ (k) (k)))
(>= (f (var x)) (+ (var x) (m)))
