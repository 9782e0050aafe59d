(>= (even 0) 1)
(>= (odd 0) 1)
(>= (even (+ (var x) 1)) (+ (odd (var x)) 1))
(>= (odd (+ (var x) 1)) (+ (even (var x)) 1))
